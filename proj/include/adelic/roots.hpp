#pragma once

#include "adelic/exact_arith.hpp"

#include <complex>
#include <vector>

namespace adelic {

struct RootOptions {
  /// Required enclosure radius relative to max{1, |z|}.
  long double tolerance = 1e-12L;
  unsigned max_degree = 512;
  unsigned max_iterations = 4000;
};

/// A disk {|z - center| <= radius} proven to contain exactly one root.
struct RootDisk {
  std::complex<long double> center;
  long double radius = 0.0L;
};

/// Roots of a squarefree integer polynomial of degree >= 1, each enclosed in
/// a disk of radius <= tolerance * max{1, |center|}.
///
/// Approximations come from Aberth-Ehrlich iteration in long double. The
/// disks of radius deg * |W_i| (W_i the Weierstrass correction, evaluated
/// with a rigorous rounding bound) are checked to be pairwise disjoint, so
/// each contains exactly one root. Throws std::invalid_argument when the
/// degree exceeds max_degree and std::runtime_error when no certificate at
/// the requested tolerance is reached.
std::vector<RootDisk> certified_roots(const IntPoly& f, const RootOptions& options = {});

/// Nearest long double to n (relative error below 2^-63).
long double to_long_double(const Integer& n);

}  // namespace adelic

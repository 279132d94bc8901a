#pragma once

#include "adelic/divisor.hpp"
#include "adelic/log_value.hpp"
#include "adelic/place.hpp"
#include "adelic/roots.hpp"
#include "adelic/weight.hpp"

#include <optional>
#include <vector>

namespace adelic {

/// Normalized chordal distance on P^1(C), in [0, 1].
long double chordal_arch(const ArchPoint& z, const ArchPoint& w);

/// log [x, y]_can at the prime p. Exact; -infinity for two equal type I points.
LogValue hsia_kernel(const Integer& p, const FinitePoint& x, const FinitePoint& y);

/// g_v(x). Throws std::invalid_argument when x belongs to the other kind of place.
LogValue weight_eval(const Weight& g, const Place& v, const BerkovichPoint& x);

/// Phi_g(x, y) = log[x, y] - g(x) - g(y); -infinity on the type I diagonal.
LogValue potential_kernel(const Weight& g, const Place& v, const BerkovichPoint& x, const BerkovichPoint& y);

/// Certified complex support of a divisor: every root of every squarefree
/// factor, tagged with its multiplicity. Computed once and shared by all
/// archimedean quantities.
struct ArchSupport {
  struct Point {
    RootDisk disk;
    unsigned multiplicity = 0;
  };
  std::vector<Point> points;
  unsigned infinity_multiplicity = 0;
};
ArchSupport arch_support(const EffectiveDivisor& z, const RootOptions& options = {});

/// Root valuations of a divisor at p from Newton polygons, tagged with
/// multiplicity: each entry is (log_p |alpha|_p or nullopt for alpha = 0,
/// ord, count of roots sharing that valuation within one factor).
struct PAdicSupport {
  struct Slope {
    PAdicLog log_abs;
    unsigned multiplicity = 0;
    std::size_t count = 0;
    std::size_t factor = 0;  // index into EffectiveDivisor::factors()
  };
  std::vector<Slope> slopes;
  unsigned infinity_multiplicity = 0;
};
PAdicSupport padic_support(const EffectiveDivisor& z, const Integer& p);

/// M^#(Z)_v = -sum_{w != inf} ord_w(Z) log [w, inf]_v.
LogValue mahler_sharp(const EffectiveDivisor& z, const Place& v, const RootOptions& options = {});
LogValue mahler_sharp_arch(const ArchSupport& s);

/// M_g(Z)_v = sum_w ord_w(Z) g_v(w) + M^#(Z)_v.
LogValue mahler_g(const EffectiveDivisor& z, const Weight& g, const Place& v, const RootOptions& options = {});
LogValue mahler_g_arch(const ArchSupport& s, const Weight& g);

/// Direct off-diagonal sum sum_{w != w'} ord_w ord_w' Phi_g(w, w') at infinity.
LogValue fekete_sum_arch(const EffectiveDivisor& z, const Weight& g, const RootOptions& options = {});
LogValue fekete_sum_arch(const ArchSupport& s, const Weight& g);

/// (Z,Z)_g at p from
///   log|D*|_p - 2 deg(Z) M_g(Z) + 2 sum_w ord_w^2 g(w) - 2 sum_{w != inf} ord_w^2 log[w, inf].
LogValue fekete_sum_nonarch(const EffectiveDivisor& z, const Weight& g, const Integer& p);

/// (Z,Z)_g at p summed in blocks of the direct pairwise sum: within-factor
/// pairs from disc(f_i), cross pairs from Res(f_i, f_j), and the one-point
/// terms from Newton polygons. Shares no intermediate with fekete_sum_nonarch
/// beyond the squarefree decomposition.
LogValue fekete_sum_nonarch_blocks(const EffectiveDivisor& z, const Weight& g, const Integer& p);

/// Everything at one place. Finite places: all entries exact, `fekete` is the
/// identity value and `fekete_check` the block sum. Archimedean place: `fekete`
/// is the direct pairwise sum and `fekete_check` the identity assembled from
/// certified roots; both carry error bounds.
struct LocalReport {
  Place place = Place::archimedean();
  LogValue log_abs_dstar;
  LogValue mahler_sharp;
  LogValue mahler_g;
  LogValue diagonal_weight;  // sum_w ord_w^2 g(w), including infinity
  LogValue diagonal_cross;   // sum_{w != inf} ord_w^2 log[w, inf]
  LogValue fekete;
  LogValue fekete_check;
  bool exact = false;
};
LocalReport local_report(const EffectiveDivisor& z, const Weight& g, const Place& v, const RootOptions& options = {});
/// Reuses a precomputed archimedean support and D*.
LocalReport local_report_arch(const EffectiveDivisor& z, const Weight& g, const ArchSupport& s, const Rational& dstar);
LocalReport local_report_finite(const EffectiveDivisor& z, const Weight& g, const Integer& p, const Rational& dstar);

struct EnergyOptions {
  double quad_tol = 1e-7;
};

/// V_g at v and how it was obtained. For the unit-circle measure the closed
/// form is the value and `cross_check` the quadrature; for Fubini-Study the
/// value is the quadrature; point masses are exact.
struct EnergyBreakdown {
  LogValue value;
  LogValue kernel_term;  // int int log[z,w] d(mu x mu)
  LogValue weight_term;  // int g d mu
  std::optional<double> cross_check;
  double quadrature_error = 0.0;
};
EnergyBreakdown energy_breakdown(const Weight& g, const Place& v, const EnergyOptions& options = {});
LogValue equilibrium_energy(const Weight& g, const Place& v, const EnergyOptions& options = {});

/// g + V_g / 2 at v, recorded with energy 0.
Weight normalize(const Weight& g, const Place& v, const EnergyOptions& options = {});

/// log r_outer = -inf g_v and log r_inner = -sup g_v.
struct Radii {
  LogValue log_outer;
  LogValue log_inner;
  long double outer() const;
  long double inner() const;
};
Radii radii(const Weight& g, const Place& v);

}  // namespace adelic

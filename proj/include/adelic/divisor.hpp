#pragma once

#include "adelic/exact_arith.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

/// An effective divisor on the projective line over Q: the zeros of a
/// primitive integer polynomial (with multiplicity) plus a multiplicity at
/// infinity. Immutable after construction.
class EffectiveDivisor {
 public:
  /// Strips the content of f and computes its squarefree decomposition.
  /// Throws std::invalid_argument for f = 0 or total degree 0.
  EffectiveDivisor(const IntPoly& f, unsigned inf_mult);

  const IntPoly& finite_part() const { return finite_; }
  unsigned infinity_multiplicity() const { return inf_mult_; }
  unsigned degree() const { return static_cast<unsigned>(finite_.degree()) + inf_mult_; }
  unsigned finite_degree() const { return static_cast<unsigned>(finite_.degree()); }

  /// Squarefree factors f_i with multiplicities m_i; empty when the finite part is constant.
  std::span<const SquarefreeFactor> factors() const { return factors_; }

  std::string to_string() const;

 private:
  IntPoly finite_;
  unsigned inf_mult_ = 0;
  std::vector<SquarefreeFactor> factors_;
};

/// Builds a divisor from ascending coefficients c_0..c_d.
EffectiveDivisor divisor_from_poly(std::span<const Integer> coeffs, unsigned inf_mult);
EffectiveDivisor divisor_from_poly(std::initializer_list<long> coeffs, unsigned inf_mult = 0);

/// Parses "c0,c1,...,cd" (ascending degree).
std::vector<Integer> parse_coefficients(const std::string& text);

/// sum_w (ord_w Z)^2.
std::uint64_t diagonal_mass(const EffectiveDivisor& z);

/// diagonal_mass / deg^2.
Rational small_diagonal_ratio(const EffectiveDivisor& z);

/// prod over ordered pairs of distinct finite support points of
/// (w - w')^{ord_w ord_w'}; 1 for the empty product.
Rational d_star(const EffectiveDivisor& z);

/// d_star together with its prime factorization, obtained by factoring the
/// discriminants, pairwise resultants and leading coefficients separately.
struct DStar {
  Rational value;
  std::vector<std::pair<Integer, long>> factorization;  // ascending primes, nonzero exponents
};
DStar d_star_factored(const EffectiveDivisor& z);

}  // namespace adelic

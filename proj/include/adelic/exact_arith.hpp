#pragma once

// Exact integer/rational arithmetic and the polynomial subroutines used by
// every other part of the library. Nothing in here rounds.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace adelic {

using Integer = mpz_class;
using Rational = mpq_class;

/// p-adic valuation: returns v with |q|_p = p^{-v}. Throws std::domain_error for q = 0.
long val_p(const Integer& q, const Integer& p);
long val_p(const Rational& q, const Integer& p);

/// Natural log of |n| for n != 0, accurate to a few ulps of long double.
long double log_abs_integer(const Integer& n);
long double log_abs_rational(const Rational& q);

/// Integer polynomial c_0 + c_1 z + ... + c_d z^d stored in ascending order.
///
/// The zero polynomial is representable (degree -1) because remainder
/// sequences produce it; every public operation that needs a nonzero input
/// checks for it.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const Integer& c, std::size_t degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  std::span<const Integer> coefficients() const { return coeffs_; }
  /// Coefficient of z^j, zero beyond the degree.
  Integer coeff(std::size_t j) const;
  const Integer& leading() const;

  IntPoly derivative() const;
  Integer content() const;

  Rational eval(const Rational& x) const;

  IntPoly& operator+=(const IntPoly& other);
  IntPoly& operator-=(const IntPoly& other);
  IntPoly& operator*=(const Integer& s);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Integer& s) { return a *= s; }
  friend IntPoly operator-(IntPoly a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  IntPoly pow(unsigned e) const;
  /// Composition this(g(z)).
  IntPoly compose(const IntPoly& g) const;
  /// Divide every coefficient by s; s must divide all of them.
  IntPoly divexact(const Integer& s) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

struct ContentSplit {
  Integer content;  // positive
  IntPoly primitive;
};

/// f = content * primitive with gcd(primitive) = 1 and content > 0.
ContentSplit content_primitive(const IntPoly& f);

/// Pseudo-remainder: lc(b)^{deg a - deg b + 1} a = q b + r.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Quotient a / b in Z[z]; throws std::logic_error unless b divides a exactly.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);

/// Primitive gcd with positive leading coefficient (primitive PRS).
IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b);

struct SquarefreeFactor {
  IntPoly factor;  // primitive, positive leading coefficient, squarefree
  unsigned multiplicity;
};

/// Yun's algorithm. f = ± prod f_i^{m_i} with the f_i pairwise coprime.
std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f);

/// Sylvester resultant, Res(f, g) = lc(f)^{deg g} lc(g)^{deg f} prod (alpha - beta),
/// alpha over roots of f and beta over roots of g. Subresultant PRS over Z.
/// With this convention Res(z - a, z - b) = a - b.
Integer resultant(const IntPoly& f, const IntPoly& g);

/// disc(f) = lc^{2n-2} prod_{i<j} (alpha_i - alpha_j)^2
///         = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
Rational discriminant(const IntPoly& f);

struct NewtonSlope {
  Rational valuation;     // v_p of each root in this segment; unused when infinite
  std::size_t multiplicity = 0;
  bool infinite = false;  // roots at z = 0
};

/// Root valuations of f over an algebraic closure of Q_p, with multiplicity,
/// from the lower convex hull of {(j, v_p(c_j))}. Zero roots come first with
/// the infinite flag set.
std::vector<NewtonSlope> newton_polygon(const IntPoly& f, const Integer& p);

struct PrimePower {
  Integer prime;
  unsigned long exponent;
};

bool is_probable_prime(const Integer& n);

/// Prime factorization of |n| for n != 0 (empty for |n| = 1), ascending.
/// Trial division then Pollard-Brent; throws std::runtime_error when the
/// iteration budget is exhausted on a composite cofactor.
std::vector<PrimePower> factor_integer(const Integer& n);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace adelic

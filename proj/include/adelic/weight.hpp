#pragma once

#include "adelic/exact_arith.hpp"
#include "adelic/log_value.hpp"
#include "adelic/place.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adelic {

using Complex = std::complex<long double>;

/// log_p of a p-adic absolute value; nullopt stands for |x|_p = 0.
using PAdicLog = std::optional<Rational>;

/// A point of P^1(C): a complex coordinate or infinity.
struct ArchPoint {
  Complex z{};
  bool infinite = false;

  static ArchPoint at(Complex w) { return {w, false}; }
  static ArchPoint infinity() { return {Complex{}, true}; }
};

/// A point of the Berkovich line over C_p that we can represent: a type I
/// point with rational coordinate, the type I point infinity, or the disk
/// D(center, p^{log_radius}). The Gauss point is D(0, 1).
struct FinitePoint {
  enum class Kind { type_one, infinity, disk };

  Kind kind = Kind::type_one;
  Rational center = 0;
  Rational log_radius = 0;  // only for disks

  static FinitePoint type_one(Rational a) { return {Kind::type_one, std::move(a), 0}; }
  static FinitePoint infinity() { return {Kind::infinity, 0, 0}; }
  static FinitePoint disk(Rational center, Rational log_radius) {
    return {Kind::disk, std::move(center), std::move(log_radius)};
  }
  static FinitePoint gauss() { return disk(0, 0); }
};

using BerkovichPoint = std::variant<ArchPoint, FinitePoint>;

/// log_p |a|_p, nullopt for a = 0.
PAdicLog padic_log_abs(const Rational& a, const Integer& p);

/// log_p max{|center|_p, radius}; nullopt for the type I point 0. Not defined at infinity.
PAdicLog padic_log_rho(const FinitePoint& x, const Integer& p);

/// Disk(a, r) and Disk(a', r) are the same point when |a - a'|_p <= r.
bool same_point(const FinitePoint& x, const FinitePoint& y, const Integer& p);

enum class WeightFamily { zero, trivial, standard, ex5 };

/// Shape of the equilibrium measure mu^g at one place.
struct EquilibriumMeasure {
  enum class Kind { fubini_study, unit_circle, dirac };
  Kind kind = Kind::dirac;
  FinitePoint point = FinitePoint::gauss();  // for dirac
};

/// A family (g_v) of continuous weights, one per place, from the built-in
/// families. At finite places every built-in weight is radial: it depends on
/// rho = max{|center|_p, radius} only.
///
///   zero      g = 0 everywhere (not normalized at infinity, V = -1/2 there)
///   trivial   g_p = 0, g_inf = -1/4
///   std       g_p = 0, g_inf(z) = log max{1,|z|} - log sqrt(1+|z|^2)
///   ex5[:c]   g_p(rho) = clamp(t_p/2 + log rho, -t_p/2, t_p/2), g_p(inf) = t_p/2,
///             g_inf = -1/4, with t_p = log p / m_p and m_p = ceil(c p^2 log p)
class Weight {
 public:
  static Weight zero();
  static Weight trivial();
  static Weight standard();
  static Weight ex5(unsigned long scale = 1);
  /// "zero | trivial | std | ex5[:c]".
  static Weight parse(std::string_view text);

  WeightFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  /// The scale c of ex5[:c]; 1 for other families.
  unsigned long ex5_scale() const { return ex5_scale_; }
  /// Primes at which a finite-place shift was applied.
  std::vector<Integer> shifted_primes() const;

  /// m_p for the ex5 family (exact ceiling, evaluated with MPFR).
  Integer ex5_denominator(const Integer& p) const;

  LogValue eval_arch(const ArchPoint& x) const;
  /// g_p at a point with rho = p^{log_rho} (nullopt: rho = 0).
  LogValue eval_radial(const Integer& p, const PAdicLog& log_rho) const;
  /// g_p at the type I point infinity.
  LogValue eval_finite_infinity(const Integer& p) const;

  LogValue sup(const Place& v) const;
  LogValue inf(const Place& v) const;
  /// sup |g_v|.
  LogValue sup_abs(const Place& v) const;

  EquilibriumMeasure measure(const Place& v) const;
  /// Equilibrium energy recorded for v, if known without computation.
  std::optional<LogValue> recorded_energy(const Place& v) const;

  /// True when g_p is nonzero at infinitely many primes.
  bool infinitely_supported() const { return family_ == WeightFamily::ex5; }
  /// Certified bound on sup |g_p| for a single small prime (floating).
  double sup_abs_bound(std::uint64_t p) const;
  /// Certified bound on sum_{p > bound} sup |g_p|.
  double tail_sum_bound(std::uint64_t bound) const;
  /// Smallest P with tail_sum_bound(P) < threshold.
  std::uint64_t truncation_bound(double threshold) const;

  /// g + c at the place v, with the energy at v recorded as `energy`.
  Weight shifted(const Place& v, const LogValue& c, std::optional<LogValue> energy) const;

  /// Floating g_p(1) and g_p(inf) for a prime in the bulk range, with a bound
  /// on the difference from the exact values.
  struct BulkValues {
    long double at_unit = 0.0L;
    long double at_infinity = 0.0L;
    long double error = 0.0L;
  };
  BulkValues bulk_values(std::uint64_t p) const;

 private:
  WeightFamily family_ = WeightFamily::zero;
  std::string name_ = "zero";
  unsigned long ex5_scale_ = 1;
  double arch_shift_ = 0.0;
  double arch_shift_error_ = 0.0;
  std::optional<double> arch_energy_;
  std::map<Integer, Rational> finite_shift_;
};

}  // namespace adelic

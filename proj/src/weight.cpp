#include "adelic/weight.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace adelic {

PAdicLog padic_log_abs(const Rational& a, const Integer& p) {
  if (a == 0) return std::nullopt;
  return Rational(-val_p(a, p));
}

PAdicLog padic_log_rho(const FinitePoint& x, const Integer& p) {
  switch (x.kind) {
    case FinitePoint::Kind::type_one:
      return padic_log_abs(x.center, p);
    case FinitePoint::Kind::disk: {
      const PAdicLog c = padic_log_abs(x.center, p);
      if (!c) return x.log_radius;
      return std::max(*c, x.log_radius);
    }
    case FinitePoint::Kind::infinity:
      break;
  }
  throw std::domain_error("rho is not defined at infinity");
}

bool same_point(const FinitePoint& x, const FinitePoint& y, const Integer& p) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case FinitePoint::Kind::infinity:
      return true;
    case FinitePoint::Kind::type_one:
      return x.center == y.center;
    case FinitePoint::Kind::disk: {
      if (x.log_radius != y.log_radius) return false;
      const PAdicLog d = padic_log_abs(x.center - y.center, p);
      return !d || *d <= x.log_radius;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

Weight Weight::zero() { return Weight(); }

Weight Weight::trivial() {
  Weight g;
  g.family_ = WeightFamily::trivial;
  g.name_ = "trivial";
  g.arch_shift_ = -0.25;
  g.arch_energy_ = 0.0;
  return g;
}

Weight Weight::standard() {
  Weight g;
  g.family_ = WeightFamily::standard;
  g.name_ = "std";
  g.arch_energy_ = 0.0;
  return g;
}

Weight Weight::ex5(unsigned long scale) {
  if (scale == 0) throw std::invalid_argument("ex5 scale must be a positive integer");
  Weight g;
  g.family_ = WeightFamily::ex5;
  g.name_ = scale == 1 ? "ex5" : "ex5:" + std::to_string(scale);
  g.ex5_scale_ = scale;
  g.arch_shift_ = -0.25;
  g.arch_energy_ = 0.0;
  return g;
}

Weight Weight::parse(std::string_view text) {
  if (text == "zero") return zero();
  if (text == "trivial") return trivial();
  if (text == "std") return standard();
  if (text == "ex5") return ex5();
  if (text.rfind("ex5:", 0) == 0) {
    const std::string arg(text.substr(4));
    std::size_t used = 0;
    unsigned long scale = 0;
    try {
      scale = std::stoul(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || scale == 0)
      throw std::invalid_argument("ex5 parameter must be a positive integer scale, got '" + arg + "'");
    return ex5(scale);
  }
  throw std::invalid_argument("unknown weight '" + std::string(text) + "' (expected trivial|std|ex5[:c])");
}

std::vector<Integer> Weight::shifted_primes() const {
  std::vector<Integer> out;
  for (const auto& [p, c] : finite_shift_) out.push_back(p);
  return out;
}

Integer Weight::ex5_denominator(const Integer& p) const {
  if (family_ != WeightFamily::ex5) throw std::logic_error("ex5_denominator on a non-ex5 weight");
  // ceil(c p^2 log p), enclosed from both sides until the ceilings agree.
  const std::size_t pbits = mpz_sizeinbase(p.get_mpz_t(), 2);
  for (mpfr_prec_t prec = static_cast<mpfr_prec_t>(2 * pbits + 128);; prec *= 2) {
    mpfr_t lo;
    mpfr_t hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    const Integer scaled = p * p * ex5_scale_;
    mpfr_set_z(lo, p.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi, p.get_mpz_t(), MPFR_RNDU);
    mpfr_log(lo, lo, MPFR_RNDD);
    mpfr_log(hi, hi, MPFR_RNDU);
    mpfr_mul_z(lo, lo, scaled.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi, hi, scaled.get_mpz_t(), MPFR_RNDU);
    mpfr_ceil(lo, lo);
    mpfr_ceil(hi, hi);
    Integer a;
    Integer b;
    mpfr_get_z(a.get_mpz_t(), lo, MPFR_RNDN);
    mpfr_get_z(b.get_mpz_t(), hi, MPFR_RNDN);
    mpfr_clear(lo);
    mpfr_clear(hi);
    if (a == b) return a;
    if (prec > (1 << 20)) throw std::runtime_error("ex5 denominator did not stabilize");
  }
}

namespace {

// Half of t_p in units of log p: 1 / (2 m_p).
Rational ex5_half(const Weight& g, const Integer& p) {
  Rational s(Integer(1), Integer(2 * g.ex5_denominator(p)));
  s.canonicalize();
  return s;
}

}  // namespace

LogValue Weight::eval_arch(const ArchPoint& x) const {
  long double base = 0.0L;
  if (family_ == WeightFamily::standard && !x.infinite) {
    const long double r = std::abs(x.z);
    // log max{1,r} - (1/2) log(1 + r^2), written to avoid cancellation for large r.
    base = (r <= 1.0L) ? -0.5L * std::log1p(r * r) : -0.5L * std::log1p(1.0L / (r * r));
  }
  const long double v = base + static_cast<long double>(arch_shift_);
  const double err = arch_shift_error_ + std::fabs(static_cast<double>(v)) * 4.0 * std::numeric_limits<double>::epsilon();
  return LogValue::approx(static_cast<double>(v), family_ == WeightFamily::standard ? err : arch_shift_error_);
}

LogValue Weight::eval_radial(const Integer& p, const PAdicLog& log_rho) const {
  LogValue shift;
  if (auto it = finite_shift_.find(p); it != finite_shift_.end()) shift = LogValue::exact(it->second, p);
  if (family_ != WeightFamily::ex5) return shift;
  const Rational s = ex5_half(*this, p);
  Rational v = log_rho ? Rational(s + *log_rho) : Rational(-s);
  if (v > s) v = s;
  if (v < -s) v = -s;
  return LogValue::exact(v, p) + shift;
}

LogValue Weight::eval_finite_infinity(const Integer& p) const {
  LogValue shift;
  if (auto it = finite_shift_.find(p); it != finite_shift_.end()) shift = LogValue::exact(it->second, p);
  if (family_ != WeightFamily::ex5) return shift;
  return LogValue::exact(ex5_half(*this, p), p) + shift;
}

LogValue Weight::sup(const Place& v) const {
  if (v.is_archimedean()) {
    // std attains 0 at z = 0 and z = infinity.
    return LogValue::approx(arch_shift_, arch_shift_error_);
  }
  return eval_finite_infinity(v.prime());
}

LogValue Weight::inf(const Place& v) const {
  if (v.is_archimedean()) {
    if (family_ == WeightFamily::standard) {
      const long double m = -0.5L * std::log(2.0L) + arch_shift_;
      return LogValue::approx(static_cast<double>(m), arch_shift_error_ + 1e-16);
    }
    return LogValue::approx(arch_shift_, arch_shift_error_);
  }
  return eval_radial(v.prime(), std::nullopt);
}

LogValue Weight::sup_abs(const Place& v) const {
  const LogValue hi = sup(v);
  const LogValue lo = inf(v);
  if (v.is_archimedean()) {
    const double a = std::max(std::fabs(static_cast<double>(hi.value())), std::fabs(static_cast<double>(lo.value())));
    return LogValue::approx(a, std::max(hi.error(), lo.error()));
  }
  const Rational a = std::max(abs(hi.coefficient()), abs(lo.coefficient()));
  return LogValue::exact(a, v.prime());
}

EquilibriumMeasure Weight::measure(const Place& v) const {
  if (v.is_archimedean()) {
    return {family_ == WeightFamily::standard ? EquilibriumMeasure::Kind::unit_circle
                                              : EquilibriumMeasure::Kind::fubini_study,
            FinitePoint::gauss()};
  }
  if (family_ == WeightFamily::ex5) {
    // mu^{g_p} is the Dirac mass at a_p^{-1}(Gauss) = D(0, p^{-1/m_p}).
    Rational r(Integer(-1), ex5_denominator(v.prime()));
    r.canonicalize();
    return {EquilibriumMeasure::Kind::dirac, FinitePoint::disk(0, r)};
  }
  return {EquilibriumMeasure::Kind::dirac, FinitePoint::gauss()};
}

std::optional<LogValue> Weight::recorded_energy(const Place& v) const {
  if (v.is_archimedean()) {
    if (arch_energy_) return LogValue::approx(*arch_energy_, 0.0);
    return std::nullopt;
  }
  return LogValue();
}

double Weight::sup_abs_bound(std::uint64_t p) const {
  if (family_ != WeightFamily::ex5) return 0.0;
  const BulkValues b = bulk_values(p);
  return static_cast<double>(b.at_unit + b.error) * (1.0 + 1e-15);
}

double Weight::tail_sum_bound(std::uint64_t bound) const {
  if (family_ != WeightFamily::ex5) return 0.0;
  if (bound == 0) return std::numeric_limits<double>::infinity();
  // t_p / 2 <= 1 / (2 c p^2) and sum_{n > P} 1/n^2 < 1/P.
  const long double b = 1.0L / (2.0L * static_cast<long double>(ex5_scale_) * static_cast<long double>(bound));
  return static_cast<double>(b * (1.0L + 1e-15L));
}

std::uint64_t Weight::truncation_bound(double threshold) const {
  if (!(threshold > 0.0)) throw std::invalid_argument("truncation threshold must be positive");
  if (family_ != WeightFamily::ex5) return 0;
  const long double x = 1.0L / (2.0L * static_cast<long double>(ex5_scale_) * threshold);
  if (x >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
    return std::numeric_limits<std::uint64_t>::max();
  auto bound = static_cast<std::uint64_t>(std::floor(x));
  while (bound == 0 || !(tail_sum_bound(bound) < threshold)) ++bound;
  while (bound > 1 && tail_sum_bound(bound - 1) < threshold) --bound;
  return bound;
}

Weight Weight::shifted(const Place& v, const LogValue& c, std::optional<LogValue> energy) const {
  Weight g = *this;
  if (v.is_archimedean()) {
    if (c.is_exact() && !c.is_exact_zero()) throw std::logic_error("archimedean shift must be approximate");
    g.arch_shift_ += static_cast<double>(c.value());
    g.arch_shift_error_ += c.error();
    if (energy) {
      g.arch_energy_ = static_cast<double>(energy->value());
    } else {
      g.arch_energy_.reset();
    }
  } else {
    if (!c.is_exact()) throw std::logic_error("finite-place shift must be exact");
    if (!c.is_exact_zero()) g.finite_shift_[v.prime()] += c.coefficient();
  }
  if (g.name_.find("+shift") == std::string::npos && !c.is_exact_zero()) g.name_ += "+shift";
  return g;
}

Weight::BulkValues Weight::bulk_values(std::uint64_t p) const {
  BulkValues out;
  if (family_ != WeightFamily::ex5) return out;
  const long double lp = std::log(static_cast<long double>(p));
  const long double x = static_cast<long double>(ex5_scale_) * static_cast<long double>(p) * static_cast<long double>(p) * lp;
  // x carries a relative error of a few ulps; fall back to the exact ceiling
  // when that could move it across an integer.
  constexpr long double delta = 64.0L * std::numeric_limits<long double>::epsilon();
  long double m = std::ceil(x * (1.0L - delta));
  long double slack = 0.0L;
  if (m != std::ceil(x * (1.0L + delta))) {
    if (x < 0x1p40L) {
      m = static_cast<long double>(ex5_denominator(Integer(static_cast<unsigned long>(p))).get_d());
    } else {
      // Beyond the exact-integer range m is only known to within a few units.
      slack = std::ceil(x * 2.0L * delta) + 1.0L;
    }
  }
  const long double half = lp / (2.0L * m);
  out.at_unit = half;
  out.at_infinity = half;
  out.error = half * (8.0L * std::numeric_limits<long double>::epsilon() + slack / (m - slack));
  return out;
}

}  // namespace adelic

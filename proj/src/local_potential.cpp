#include "adelic/local_potential.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace adelic {

namespace {

constexpr long double kUnit = std::numeric_limits<long double>::epsilon() / 2;

// (1/2) log(1 + |z|^2) = -log [z, inf].
long double half_log1p_sq(long double r) {
  if (r <= 1.0L) return 0.5L * std::log1p(r * r);
  return std::log(r) + 0.5L * std::log1p(1.0L / (r * r));
}

PAdicLog max_log(const PAdicLog& a, const PAdicLog& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

Rational at_least_zero(const PAdicLog& a) { return a && *a > 0 ? *a : Rational(0); }

// Center and log-radius of a finite point (type I points have radius 0).
struct DiskData {
  Rational center;
  PAdicLog log_radius;
};

DiskData disk_data(const FinitePoint& x) {
  if (x.kind == FinitePoint::Kind::disk) return {x.center, x.log_radius};
  return {x.center, std::nullopt};
}

Rational coefficient_of(const LogValue& v) {
  if (!v.is_exact()) throw std::logic_error("expected an exact finite-place value");
  return v.coefficient();
}

// Running sum of approximate terms with a rounding allowance.
struct ApproxSum {
  long double value = 0.0L;
  long double error = 0.0L;
  long double magnitude = 0.0L;

  void add(long double v, long double e) {
    value += v;
    error += e;
    magnitude += std::fabs(v);
  }
  LogValue result() const {
    const long double total = error + 4.0L * kUnit * magnitude + std::numeric_limits<double>::epsilon() * std::fabs(value);
    return LogValue::approx(static_cast<double>(value), static_cast<double>(total * (1.0L + 1e-6L)));
  }
};

// Per-root archimedean data shared by every sum.
struct ArchTerms {
  long double h = 0.0L;  // (1/2) log(1 + |z|^2)
  long double g = 0.0L;
  long double err = 0.0L;  // bound on the combined error of h and g
};

std::vector<ArchTerms> arch_terms(const ArchSupport& s, const Weight& g) {
  std::vector<ArchTerms> out;
  out.reserve(s.points.size());
  for (const auto& pt : s.points) {
    const long double r = std::abs(pt.disk.center);
    ArchTerms t;
    t.h = half_log1p_sq(r);
    const LogValue gv = g.eval_arch(ArchPoint::at(pt.disk.center));
    t.g = gv.value();
    // Both functions are 1/2-Lipschitz in |z| for the built-in weights.
    t.err = pt.disk.radius + gv.error() + 4.0L * kUnit * (std::fabs(t.h) + 1.0L);
    out.push_back(t);
  }
  return out;
}

}  // namespace

long double chordal_arch(const ArchPoint& z, const ArchPoint& w) {
  if (z.infinite && w.infinite) return 0.0L;
  if (z.infinite || w.infinite) {
    const long double r = std::abs(z.infinite ? w.z : z.z);
    return 1.0L / std::sqrt(1.0L + r * r);
  }
  const long double a = std::abs(z.z);
  const long double b = std::abs(w.z);
  return std::abs(z.z - w.z) / (std::sqrt(1.0L + a * a) * std::sqrt(1.0L + b * b));
}

LogValue hsia_kernel(const Integer& p, const FinitePoint& x, const FinitePoint& y) {
  using K = FinitePoint::Kind;
  if (x.kind == K::infinity && y.kind == K::infinity) return LogValue::neg_infinity();
  if (x.kind == K::infinity || y.kind == K::infinity) {
    const FinitePoint& other = x.kind == K::infinity ? y : x;
    return LogValue::exact(-at_least_zero(padic_log_rho(other, p)), p);
  }
  const DiskData a = disk_data(x);
  const DiskData b = disk_data(y);
  const PAdicLog top = max_log(max_log(padic_log_abs(a.center - b.center, p), a.log_radius), b.log_radius);
  if (!top) return LogValue::neg_infinity();
  const Rational ra = at_least_zero(padic_log_rho(x, p));
  const Rational rb = at_least_zero(padic_log_rho(y, p));
  return LogValue::exact(*top - ra - rb, p);
}

LogValue weight_eval(const Weight& g, const Place& v, const BerkovichPoint& x) {
  if (v.is_archimedean()) {
    const auto* z = std::get_if<ArchPoint>(&x);
    if (!z) throw std::invalid_argument("weight_eval: finite-place point given at the archimedean place");
    return g.eval_arch(*z);
  }
  const auto* f = std::get_if<FinitePoint>(&x);
  if (!f) throw std::invalid_argument("weight_eval: complex point given at a finite place");
  if (f->kind == FinitePoint::Kind::infinity) return g.eval_finite_infinity(v.prime());
  return g.eval_radial(v.prime(), padic_log_rho(*f, v.prime()));
}

LogValue potential_kernel(const Weight& g, const Place& v, const BerkovichPoint& x, const BerkovichPoint& y) {
  LogValue k;
  if (v.is_archimedean()) {
    const auto* a = std::get_if<ArchPoint>(&x);
    const auto* b = std::get_if<ArchPoint>(&y);
    if (!a || !b) throw std::invalid_argument("potential_kernel: finite-place point given at the archimedean place");
    if (a->infinite && b->infinite) return LogValue::neg_infinity();
    if (a->infinite || b->infinite) {
      const long double r = std::abs(a->infinite ? b->z : a->z);
      const long double h = half_log1p_sq(r);
      k = LogValue::approx(static_cast<double>(-h), static_cast<double>(4.0L * kUnit * (h + 1.0L)));
    } else {
      const long double d = std::abs(a->z - b->z);
      if (d == 0) return LogValue::neg_infinity();
      const long double v1 = std::log(d) - half_log1p_sq(std::abs(a->z)) - half_log1p_sq(std::abs(b->z));
      k = LogValue::approx(static_cast<double>(v1), static_cast<double>(8.0L * kUnit * (std::fabs(v1) + 1.0L)));
    }
  } else {
    const auto* a = std::get_if<FinitePoint>(&x);
    const auto* b = std::get_if<FinitePoint>(&y);
    if (!a || !b) throw std::invalid_argument("potential_kernel: complex point given at a finite place");
    k = hsia_kernel(v.prime(), *a, *b);
    if (k.is_neg_infinity()) return k;
  }
  return k - weight_eval(g, v, x) - weight_eval(g, v, y);
}

// ---------------------------------------------------------------------------
// Supports

ArchSupport arch_support(const EffectiveDivisor& z, const RootOptions& options) {
  ArchSupport s;
  s.infinity_multiplicity = z.infinity_multiplicity();
  for (const auto& [f, m] : z.factors()) {
    for (const RootDisk& d : certified_roots(f, options)) s.points.push_back({d, m});
  }
  return s;
}

PAdicSupport padic_support(const EffectiveDivisor& z, const Integer& p) {
  PAdicSupport s;
  s.infinity_multiplicity = z.infinity_multiplicity();
  const auto factors = z.factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const NewtonSlope& sl : newton_polygon(factors[i].factor, p)) {
      PAdicSupport::Slope out;
      if (!sl.infinite) out.log_abs = Rational(-sl.valuation);
      out.multiplicity = factors[i].multiplicity;
      out.count = sl.multiplicity;
      out.factor = i;
      s.slopes.push_back(out);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Mahler measures

LogValue mahler_sharp_arch(const ArchSupport& s) {
  ApproxSum sum;
  for (const auto& pt : s.points) {
    const long double h = half_log1p_sq(std::abs(pt.disk.center));
    sum.add(pt.multiplicity * h, pt.multiplicity * (pt.disk.radius + 4.0L * kUnit * (h + 1.0L)));
  }
  return sum.result();
}

LogValue mahler_sharp(const EffectiveDivisor& z, const Place& v, const RootOptions& options) {
  if (v.is_archimedean()) return mahler_sharp_arch(arch_support(z, options));
  // Gauss's lemma: prod over roots of max{1, |w|_p} = |lc(f)|_p^{-1} for primitive f.
  if (z.finite_degree() == 0) return LogValue();
  return LogValue::exact(Rational(val_p(z.finite_part().leading(), v.prime())), v.prime());
}

LogValue mahler_g_arch(const ArchSupport& s, const Weight& g) {
  ApproxSum sum;
  const auto terms = arch_terms(s, g);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const long double m = s.points[k].multiplicity;
    sum.add(m * (terms[k].g + terms[k].h), m * terms[k].err);
  }
  if (s.infinity_multiplicity > 0) {
    const LogValue gi = g.eval_arch(ArchPoint::infinity());
    sum.add(s.infinity_multiplicity * gi.value(), s.infinity_multiplicity * gi.error());
  }
  return sum.result();
}

namespace {

// sum_w ord_w g(w) at p, via Newton polygon valuations.
Rational weight_integral_finite(const PAdicSupport& s, const Weight& g, const Integer& p) {
  Rational total = 0;
  for (const auto& sl : s.slopes) {
    total += Rational(static_cast<unsigned long>(sl.multiplicity * sl.count)) * coefficient_of(g.eval_radial(p, sl.log_abs));
  }
  if (s.infinity_multiplicity > 0)
    total += Rational(s.infinity_multiplicity) * coefficient_of(g.eval_finite_infinity(p));
  return total;
}

}  // namespace

LogValue mahler_g(const EffectiveDivisor& z, const Weight& g, const Place& v, const RootOptions& options) {
  if (v.is_archimedean()) return mahler_g_arch(arch_support(z, options), g);
  const Integer& p = v.prime();
  const Rational w = weight_integral_finite(padic_support(z, p), g, p);
  return LogValue::exact(w, p) + mahler_sharp(z, v, options);
}

// ---------------------------------------------------------------------------
// Fekete sums

LogValue fekete_sum_arch(const ArchSupport& s, const Weight& g) {
  const auto terms = arch_terms(s, g);
  const std::size_t n = s.points.size();
  ApproxSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = s.points[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& b = s.points[j];
      const long double d = std::abs(a.disk.center - b.disk.center);
      const long double rr = a.disk.radius + b.disk.radius;
      if (!(d > rr)) throw std::runtime_error("root enclosures overlap; raise the precision");
      const long double phi = std::log(d) - terms[i].h - terms[j].h - terms[i].g - terms[j].g;
      const long double err = rr / (d - rr) + terms[i].err + terms[j].err + 8.0L * kUnit * std::fabs(std::log(d));
      // Both orders of the pair.
      const long double w = 2.0L * a.multiplicity * b.multiplicity;
      sum.add(w * phi, w * err);
    }
  }
  if (s.infinity_multiplicity > 0) {
    const LogValue gi = g.eval_arch(ArchPoint::infinity());
    for (std::size_t i = 0; i < n; ++i) {
      const long double phi = -terms[i].h - terms[i].g - gi.value();
      const long double w = 2.0L * s.infinity_multiplicity * s.points[i].multiplicity;
      sum.add(w * phi, w * (terms[i].err + gi.error()));
    }
  }
  return sum.result();
}

LogValue fekete_sum_arch(const EffectiveDivisor& z, const Weight& g, const RootOptions& options) {
  return fekete_sum_arch(arch_support(z, options), g);
}

LocalReport local_report_finite(const EffectiveDivisor& z, const Weight& g, const Integer& p, const Rational& dstar) {
  const PAdicSupport s = padic_support(z, p);
  const Place v = Place::finite(p);
  LocalReport r;
  r.place = v;
  r.exact = true;
  r.log_abs_dstar = log_abs(dstar, v);
  r.mahler_sharp = mahler_sharp(z, v);
  r.mahler_g = LogValue::exact(weight_integral_finite(s, g, p), p) + r.mahler_sharp;

  Rational diag = 0;
  Rational cross = 0;
  for (const auto& sl : s.slopes) {
    const Rational mult(static_cast<unsigned long>(sl.multiplicity) * sl.multiplicity * sl.count);
    diag += mult * coefficient_of(g.eval_radial(p, sl.log_abs));
    // log_p [w, inf] = -max{0, log_p |w|}.
    cross -= mult * at_least_zero(sl.log_abs);
  }
  const unsigned mi = s.infinity_multiplicity;
  if (mi > 0) diag += Rational(static_cast<unsigned long>(mi) * mi) * coefficient_of(g.eval_finite_infinity(p));
  r.diagonal_weight = LogValue::exact(diag, p);
  r.diagonal_cross = LogValue::exact(cross, p);

  const Rational two_d(2 * static_cast<unsigned long>(z.degree()));
  r.fekete = r.log_abs_dstar - two_d * r.mahler_g + Rational(2) * r.diagonal_weight - Rational(2) * r.diagonal_cross;
  r.fekete_check = fekete_sum_nonarch_blocks(z, g, p);
  return r;
}

LogValue fekete_sum_nonarch(const EffectiveDivisor& z, const Weight& g, const Integer& p) {
  return local_report_finite(z, g, p, d_star(z)).fekete;
}

LogValue fekete_sum_nonarch_blocks(const EffectiveDivisor& z, const Weight& g, const Integer& p) {
  const auto factors = z.factors();
  const std::size_t k = factors.size();
  const long d_fin = z.finite_degree();
  const long m_inf = z.infinity_multiplicity();
  std::vector<long> lc_val(k);
  for (std::size_t i = 0; i < k; ++i) lc_val[i] = val_p(factors[i].factor.leading(), p);

  Rational total = 0;
  // Ordered pairs of distinct roots of one factor: prod (alpha - beta) = ± disc / lc^{2n-2}.
  for (std::size_t i = 0; i < k; ++i) {
    const long n = factors[i].factor.degree();
    if (n < 2) continue;
    const long m = factors[i].multiplicity;
    const Rational disc = discriminant(factors[i].factor);
    total += Rational(m * m) * Rational(-val_p(disc, p) + (2 * n - 2) * lc_val[i]);
  }
  // Pairs across factors, both orders: prod (alpha - beta) = Res / (lc_i^{n_j} lc_j^{n_i}).
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const long ni = factors[i].factor.degree();
      const long nj = factors[j].factor.degree();
      const long w = 2L * factors[i].multiplicity * factors[j].multiplicity;
      const Integer res = resultant(factors[i].factor, factors[j].factor);
      total += Rational(w) * Rational(-val_p(res, p) + nj * lc_val[i] + ni * lc_val[j]);
    }
  }
  // One-point terms: each ordered pair (w, w') also contributes L(w) + L(w')
  // with L = log[., inf] - g, and pairs with infinity add -g(inf).
  const Rational g_inf = coefficient_of(g.eval_finite_infinity(p));
  for (std::size_t i = 0; i < k; ++i) {
    const long m = factors[i].multiplicity;
    for (const NewtonSlope& sl : newton_polygon(factors[i].factor, p)) {
      const PAdicLog la = sl.infinite ? PAdicLog() : PAdicLog(Rational(-sl.valuation));
      const Rational big_l = -at_least_zero(la) - coefficient_of(g.eval_radial(p, la));
      const Rational count(static_cast<unsigned long>(sl.multiplicity));
      total += Rational(2 * m * (d_fin - m)) * count * big_l;
      total += Rational(2 * m_inf * m) * count * (big_l - g_inf);
    }
  }
  return LogValue::exact(total, p);
}

LocalReport local_report_arch(const EffectiveDivisor& z, const Weight& g, const ArchSupport& s, const Rational& dstar) {
  LocalReport r;
  r.place = Place::archimedean();
  r.log_abs_dstar = log_abs(dstar, r.place);
  r.mahler_sharp = mahler_sharp_arch(s);
  r.mahler_g = mahler_g_arch(s, g);

  const auto terms = arch_terms(s, g);
  ApproxSum diag;
  ApproxSum cross;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const long double m2 = static_cast<long double>(s.points[i].multiplicity) * s.points[i].multiplicity;
    diag.add(m2 * terms[i].g, m2 * terms[i].err);
    cross.add(-m2 * terms[i].h, m2 * terms[i].err);
  }
  if (s.infinity_multiplicity > 0) {
    const LogValue gi = g.eval_arch(ArchPoint::infinity());
    const long double m2 = static_cast<long double>(s.infinity_multiplicity) * s.infinity_multiplicity;
    diag.add(m2 * gi.value(), m2 * gi.error());
  }
  r.diagonal_weight = diag.result();
  r.diagonal_cross = cross.result();
  r.fekete = fekete_sum_arch(s, g);
  const double two_d = 2.0 * z.degree();
  r.fekete_check = r.log_abs_dstar - two_d * r.mahler_g + 2.0 * r.diagonal_weight - 2.0 * r.diagonal_cross;
  return r;
}

LocalReport local_report(const EffectiveDivisor& z, const Weight& g, const Place& v, const RootOptions& options) {
  const Rational ds = d_star(z);
  if (v.is_finite()) return local_report_finite(z, g, v.prime(), ds);
  return local_report_arch(z, g, arch_support(z, options), ds);
}

// ---------------------------------------------------------------------------
// Energies

namespace {

using boost::math::quadrature::gauss_kronrod;

struct Quad {
  double value = 0.0;
  double error = 0.0;
};

// int_C F(z) d omega(z) for the Fubini-Study measure
// d omega = (1/pi) (1 + r^2)^{-2} r dr dtheta, with r = u / (1 - u).
template <class F>
Quad fubini_study_integral(F&& f, double tol) {
  double inner_err_max = 0.0;
  auto radial = [&](double theta) {
    auto integrand = [&](double u) {
      if (u >= 1.0) return 0.0;
      const double r = u / (1.0 - u);
      const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
      const double dens = r / (std::numbers::pi * (1.0 + r * r) * (1.0 + r * r));
      return f(std::polar(r, theta)) * dens * jac;
    };
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 15, tol, &err);
    inner_err_max = std::max(inner_err_max, err);
    return v;
  };
  double outer_err = 0.0;
  const double v = gauss_kronrod<double, 15>::integrate(radial, 0.0, 2.0 * std::numbers::pi, 10, tol, &outer_err);
  return {v, outer_err + 2.0 * std::numbers::pi * inner_err_max};
}

}  // namespace

EnergyBreakdown energy_breakdown(const Weight& g, const Place& v, const EnergyOptions& options) {
  if (!(options.quad_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  const EquilibriumMeasure mu = g.measure(v);
  EnergyBreakdown out;
  switch (mu.kind) {
    case EquilibriumMeasure::Kind::dirac: {
      if (v.is_archimedean()) throw std::invalid_argument("point-mass equilibrium measure at infinity is unsupported");
      const Integer& p = v.prime();
      out.kernel_term = hsia_kernel(p, mu.point, mu.point);
      out.weight_term = weight_eval(g, v, mu.point);
      out.value = potential_kernel(g, v, mu.point, mu.point);
      return out;
    }
    case EquilibriumMeasure::Kind::fubini_study: {
      if (v.is_finite()) throw std::invalid_argument("Fubini-Study measure exists only at infinity");
      // omega is rotation invariant, so int log[z, w] d omega(z) does not depend
      // on w; take w = infinity, where log[z, inf] = -(1/2) log(1 + |z|^2).
      const Quad k = fubini_study_integral(
          [](std::complex<double> z) { return -static_cast<double>(half_log1p_sq(std::abs(z))); }, options.quad_tol);
      const Quad w = fubini_study_integral(
          [&g](std::complex<double> z) {
            return static_cast<double>(g.eval_arch(ArchPoint::at(Complex(z.real(), z.imag()))).value());
          },
          options.quad_tol);
      const double shift_err = g.eval_arch(ArchPoint::at(0)).error();
      out.kernel_term = LogValue::approx(k.value, k.error);
      out.weight_term = LogValue::approx(w.value, w.error + shift_err);
      out.quadrature_error = k.error + 2.0 * w.error;
      out.value = out.kernel_term - 2.0 * out.weight_term;
      return out;
    }
    case EquilibriumMeasure::Kind::unit_circle: {
      if (v.is_finite()) throw std::invalid_argument("unit-circle measure exists only at infinity");
      // On |z| = |w| = 1: log[z, w] = log|z - w| - log 2 and int int log|z - w| = 0.
      constexpr double ln2 = std::numbers::ln2;
      const LogValue on_circle = g.eval_arch(ArchPoint::at(1));
      out.kernel_term = LogValue::approx(-ln2, 1e-16);
      out.weight_term = on_circle;
      out.value = out.kernel_term - 2.0 * out.weight_term;

      // Cross-check: (1/pi) int_0^pi log[e^{i t}, 1] dt and (1/2pi) int g(e^{i t}) dt.
      boost::math::quadrature::tanh_sinh<double> ts;
      double kerr = 0.0;
      const double kq = ts.integrate(
                            [](double t) {
                              return std::log(2.0 * std::sin(t / 2.0)) - ln2;
                            },
                            0.0, std::numbers::pi, options.quad_tol, &kerr) /
                        std::numbers::pi;
      double werr = 0.0;
      const double wq = gauss_kronrod<double, 31>::integrate(
                            [&g](double t) {
                              return static_cast<double>(
                                  g.eval_arch(ArchPoint::at(std::polar(1.0L, static_cast<long double>(t)))).value());
                            },
                            0.0, 2.0 * std::numbers::pi, 10, options.quad_tol, &werr) /
                        (2.0 * std::numbers::pi);
      out.cross_check = kq - 2.0 * wq;
      out.quadrature_error = kerr / std::numbers::pi + werr / std::numbers::pi;
      return out;
    }
  }
  throw std::invalid_argument("unsupported equilibrium measure");
}

LogValue equilibrium_energy(const Weight& g, const Place& v, const EnergyOptions& options) {
  return energy_breakdown(g, v, options).value;
}

Weight normalize(const Weight& g, const Place& v, const EnergyOptions& options) {
  const LogValue e = equilibrium_energy(g, v, options);
  if (v.is_finite()) return g.shifted(v, Rational(1, 2) * e, LogValue());
  return g.shifted(v, 0.5 * e, LogValue::approx(0.0, e.error()));
}

long double Radii::outer() const { return std::exp(log_outer.value()); }
long double Radii::inner() const { return std::exp(log_inner.value()); }

Radii radii(const Weight& g, const Place& v) { return {-g.inf(v), -g.sup(v)}; }

}  // namespace adelic

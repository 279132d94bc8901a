#include "adelic/verify.hpp"

#include "adelic/global_heights.hpp"
#include "adelic/local_potential.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace adelic {

IntPoly random_poly(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> coeff(-bound, bound);
  std::vector<Integer> c(degree + 1);
  for (auto& x : c) x = coeff(rng);
  while (c[degree] == 0) c[degree] = coeff(rng);
  while (c[0] == 0) c[0] = coeff(rng);
  return IntPoly(std::move(c));
}

IntPoly random_squarefree_poly(std::mt19937_64& rng, int degree, long bound) {
  for (;;) {
    IntPoly f = random_poly(rng, degree, bound);
    if (degree <= 1 || gcd_primitive(f, f.derivative()).degree() == 0) return f;
  }
}

EffectiveDivisor random_divisor(std::mt19937_64& rng, int max_degree, bool with_infinity) {
  std::uniform_int_distribution<int> parts(1, 3);
  std::uniform_int_distribution<unsigned> mult(1, 3);
  const unsigned inf_mult = with_infinity ? mult(rng) : 0;
  IntPoly f{1};
  int degree = 0;
  const int k = parts(rng);
  for (int i = 0; i < k && degree < max_degree; ++i) {
    const int room = max_degree - degree;
    std::uniform_int_distribution<int> deg(1, std::min(room, 5));
    const int d = deg(rng);
    const unsigned m = std::min<unsigned>(mult(rng), static_cast<unsigned>(room / d));
    if (m == 0) continue;
    f = f * random_poly(rng, d, 3).pow(m);
    degree += d * static_cast<int>(m);
  }
  return EffectiveDivisor(f, inf_mult);
}

Rational random_rational(std::mt19937_64& rng, int digits) {
  Integer top = 1;
  for (int i = 0; i < digits; ++i) top *= 10;
  const unsigned long limit = top.fits_ulong_p() ? top.get_ui() : ~0UL;
  std::uniform_int_distribution<unsigned long> pick(1, limit - 1);
  Integer num = pick(rng);
  if (rng() & 1) num = -num;
  Rational q(num, Integer(pick(rng)));
  q.canonicalize();
  return q;
}

namespace {

std::string poly_text(const EffectiveDivisor& z) { return z.to_string(); }

void suite_product_formula(std::mt19937_64& rng, VerifyResult& out) {
  for (int i = 0; i < 100; ++i) {
    const Rational q = random_rational(rng, 12);
    ++out.cases;
    if (!product_formula_check(q)) out.failures.push_back("product formula fails for " + to_string(q));
  }
  std::uniform_int_distribution<int> deg(1, 10);
  for (int i = 0; i < 50; ++i) {
    const EffectiveDivisor z(random_squarefree_poly(rng, deg(rng), 4), 0);
    const Rational ds = d_star(z);
    ++out.cases;
    if (!product_formula_check(ds)) out.failures.push_back("product formula fails for D* of " + poly_text(z));
  }
}

void suite_identity(std::mt19937_64& rng, VerifyResult& out) {
  const Weight weights[] = {Weight::trivial(), Weight::standard(), Weight::ex5()};
  for (int i = 0; i < 50; ++i) {
    const EffectiveDivisor z = random_divisor(rng, 20, i % 2 == 1);
    const DStar ds = d_star_factored(z);
    for (const Weight& g : weights) {
      std::set<Place> places;
      for (const Place& v : relevant_places(z, g, 1e-2, ds).exceptional) places.insert(v);
      for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) places.insert(Place::finite(p));
      for (const Place& v : places) {
        ++out.cases;
        if (v.is_finite()) {
          const LocalReport r = local_report_finite(z, g, v.prime(), ds.value);
          if (!(r.fekete == r.fekete_check)) {
            out.failures.push_back(poly_text(z) + " weight " + g.name() + " at " + v.to_string() + ": identity " +
                                   r.fekete.to_string() + " vs blocks " + r.fekete_check.to_string());
          }
        } else {
          const LocalReport r = local_report_arch(z, g, arch_support(z), ds.value);
          const long double diff = std::fabs(r.fekete.value() - r.fekete_check.value());
          if (!(diff <= 1e-8L)) {
            std::ostringstream os;
            os << poly_text(z) << " weight " << g.name() << " at inf: direct " << r.fekete.to_string()
               << " vs identity " << r.fekete_check.to_string();
            out.failures.push_back(os.str());
          }
        }
      }
    }
  }
}

void suite_ex5(std::mt19937_64& rng, VerifyResult& out) {
  const Weight g = Weight::ex5();
  for (unsigned long p : primes_in_range(2, 100)) {
    const Integer P(p);
    const Integer m = g.ex5_denominator(P);
    Rational half(Integer(1), Integer(2 * m));
    half.canonicalize();
    for (int k = 0; k < 200; ++k) {
      // log_p rho on a grid over [-2, 2] straddling the transition near 0.
      Rational lr(Integer(k - 100), Integer(50));
      lr.canonicalize();
      const LogValue v = g.eval_radial(P, lr);
      ++out.cases;
      if (abs(v.is_exact_zero() ? Rational(0) : v.coefficient()) > half)
        out.failures.push_back("ex5 |g_p| exceeds t_p/2 at p=" + P.get_str() + " log_p rho=" + to_string(lr));
    }
    // t_p / 2 <= 1/(2p^2) in natural-log units: log p / m <= 1/p^2.
    ++out.cases;
    const long double tp = std::log(static_cast<long double>(p)) / m.get_d();
    if (!(tp <= 1.0L / (static_cast<long double>(p) * p) * (1.0L + 1e-15L)))
      out.failures.push_back("t_p exceeds 1/p^2 at p=" + P.get_str());
    const Radii rr = radii(g, Place::finite(P));
    ++out.cases;
    if (!(rr.log_outer + rr.log_inner).is_exact_zero())
      out.failures.push_back("log r_outer + log r_inner != 0 at p=" + P.get_str());
    ++out.cases;
    Rational lrad(Integer(-1), m);
    lrad.canonicalize();
    const FinitePoint s = FinitePoint::disk(0, lrad);
    if (!potential_kernel(g, Place::finite(P), s, s).is_exact_zero())
      out.failures.push_back("Phi at the equilibrium disk is not 0 at p=" + P.get_str());
  }
  // Phi_g(z, w) = log[a z, a w]_p with |a|_p = p^{1/m}.
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    const Integer P(p);
    Rational t(Integer(1), g.ex5_denominator(P));
    t.canonicalize();
    for (int k = 0; k < 100; ++k) {
      const Rational z = random_rational(rng, 3);
      Rational w = random_rational(rng, 3);
      if (w == z) w += 1;
      const Rational lz = -val_p(z, P);
      const Rational lw = -val_p(w, P);
      const Rational ld = -val_p(Rational(z - w), P);
      const Rational rhs = t + ld - std::max(Rational(0), Rational(t + lz)) - std::max(Rational(0), Rational(t + lw));
      const LogValue lhs = potential_kernel(g, Place::finite(P), FinitePoint::type_one(z), FinitePoint::type_one(w));
      ++out.cases;
      const Rational lc = lhs.is_exact_zero() ? Rational(0) : lhs.coefficient();
      if (!lhs.is_exact() || lc != rhs)
        out.failures.push_back("kernel identity fails at p=" + P.get_str() + " z=" + to_string(z) + " w=" + to_string(w));
    }
  }
}

void suite_lemma43(std::mt19937_64& rng, VerifyResult& out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> head_len(1, 6);
  std::uniform_int_distribution<int> tail_len(1, 30);
  for (int trial = 0; trial < 1000; ++trial) {
    const int M = head_len(rng);
    const int K = tail_len(rng);
    const double eps = 0.01 + unit(rng);
    // b decays geometrically; scale the tail so that it is below eps/8.
    std::vector<double> ball(M + K);
    for (int m = 0; m < M + K; ++m) ball[m] = std::pow(0.5, m);
    double tail = 0.0;
    for (int m = M; m < M + K; ++m) tail += ball[m];
    const double scale = eps / 8.0 / tail * unit(rng) * 0.999;
    for (int m = M; m < M + K; ++m) ball[m] *= scale;
    tail *= scale;
    const double h = eps / (8.0 * M);
    Lemma43Input in;
    in.eps = eps;
    in.tail_bound = tail;
    in.b.assign(ball.begin(), ball.begin() + M);
    std::vector<std::vector<double>> full;
    for (int n = 0; n < 4; ++n) {
      std::vector<double> row(M + K);
      for (int m = 0; m < M; ++m) row[m] = std::min(ball[m], -h + 2.0 * h * unit(rng)) * 0.999;
      for (int m = M; m < M + K; ++m) row[m] = ball[m] * (2.0 * unit(rng) - 1.0);
      double s = 0.0;
      for (double a : row) s += a;
      in.rows.emplace_back(row.begin(), row.begin() + M);
      in.row_sums.emplace_back(s - 1e-12, s + 1e-12);
      full.push_back(row);
    }
    ++out.cases;
    const auto res = lemma43_certify(in);
    if (const auto* certs = std::get_if<std::vector<Lemma43Certificate>>(&res)) {
      for (const auto& c : *certs) {
        double sup = 0.0;
        for (double a : full[c.row]) sup = std::max(sup, std::fabs(a));
        if (!(sup <= c.sup_bound && c.sup_bound < eps)) {
          std::ostringstream os;
          os << "lemma43 certificate wrong: trial " << trial << " row " << c.row << " sup " << sup << " bound " << c.sup_bound;
          out.failures.push_back(os.str());
        }
      }
    } else {
      out.failures.push_back("lemma43 refused a valid instance (trial " + std::to_string(trial) + "): " +
                             std::get<Lemma43Refusal>(res).message);
    }

    // The same instance with one hypothesis broken.
    Lemma43Input bad = in;
    const int kind = trial % 3;
    Lemma43Hypothesis expected = Lemma43Hypothesis::tail_bound;
    if (kind == 0) {
      bad.tail_bound = eps / 4.0 * (1.0 + unit(rng));
    } else if (kind == 1) {
      expected = Lemma43Hypothesis::row_sum;
      bad.row_sums[1] = {eps / 4.0, eps / 4.0 + 1.0};
    } else {
      expected = Lemma43Hypothesis::head_sup;
      bad.b[0] = 1e9;
      bad.rows[2][0] = eps / (4.0 * M) * (1.0 + unit(rng));
      // The row-sum window still passes, so the head bound is the first hypothesis to fail.
      bad.row_sums[2] = {-eps / 8.0, eps / 8.0};
    }
    ++out.cases;
    const auto rej = lemma43_certify(bad);
    const auto* refusal = std::get_if<Lemma43Refusal>(&rej);
    if (!refusal || refusal->violated != expected) {
      out.failures.push_back("lemma43 adversarial trial " + std::to_string(trial) + " expected refusal on " +
                             to_string(expected));
    }
  }
}

}  // namespace

std::vector<std::string> verify_suites() { return {"productformula", "identity", "ex5", "lemma43"}; }

VerifyResult run_verify(const std::string& suite, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VerifyResult out;
  out.suite = suite;
  if (suite == "productformula") {
    suite_product_formula(rng, out);
  } else if (suite == "identity") {
    suite_identity(rng, out);
  } else if (suite == "ex5") {
    suite_ex5(rng, out);
  } else if (suite == "lemma43") {
    suite_lemma43(rng, out);
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "' (expected productformula|identity|ex5|lemma43)");
  }
  return out;
}

}  // namespace adelic

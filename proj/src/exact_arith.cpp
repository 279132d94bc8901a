#include "adelic/exact_arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace adelic {

long val_p(const Integer& q, const Integer& p) {
  if (q == 0) throw std::domain_error("valuation of zero");
  if (p < 2) throw std::domain_error("valuation base must be a prime");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t()));
}

long val_p(const Rational& q, const Integer& p) {
  if (q == 0) throw std::domain_error("valuation of zero");
  return val_p(Integer(q.get_num()), p) - val_p(Integer(q.get_den()), p);
}

long double log_abs_integer(const Integer& n) {
  if (n == 0) throw std::domain_error("log of zero");
  const Integer a = abs(n);
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  if (bits <= 64) return std::log(static_cast<long double>(mpz_get_ui(a.get_mpz_t())));
  // Keep the top 64 bits; the discarded tail changes the log by < 2^-63.
  Integer top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), a.get_mpz_t(), bits - 64);
  const long double lead = static_cast<long double>(mpz_get_ui(top.get_mpz_t()));
  return std::log(lead) + static_cast<long double>(bits - 64) * std::log(2.0L);
}

long double log_abs_rational(const Rational& q) {
  return log_abs_integer(Integer(q.get_num())) - log_abs_integer(Integer(q.get_den()));
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPoly::coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : Integer(0); }

const Integer& IntPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * static_cast<unsigned long>(j);
  return IntPoly(std::move(d));
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

IntPoly operator-(IntPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result{1};
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

IntPoly IntPoly::compose(const IntPoly& g) const {
  IntPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * g;
    acc += IntPoly(std::vector<Integer>{*it});
  }
  return acc;
}

IntPoly IntPoly::divexact(const Integer& s) const {
  if (s == 0) throw std::domain_error("division by zero");
  std::vector<Integer> out(coeffs_.size());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (!mpz_divisible_p(coeffs_[j].get_mpz_t(), s.get_mpz_t()))
      throw std::logic_error("divexact: scalar does not divide coefficient");
    mpz_divexact(out[j].get_mpz_t(), coeffs_[j].get_mpz_t(), s.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k >= 1) os << 'z';
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Content, division, gcd

ContentSplit content_primitive(const IntPoly& f) {
  if (f.is_zero()) throw std::domain_error("content of the zero polynomial");
  Integer c = f.content();
  return {c, f.divexact(c)};
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-division by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  const int db = b.degree();
  const Integer& lb = b.leading();
  IntPoly r = a;
  int e = a.degree() - db + 1;
  while (!r.is_zero() && r.degree() >= db) {
    IntPoly shifted = IntPoly::monomial(r.leading(), static_cast<std::size_t>(r.degree() - db)) * b;
    r *= lb;
    r -= shifted;
    --e;
  }
  if (e > 0) {
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    r *= scale;
  }
  return r;
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw std::logic_error("exact_quotient: divisor does not divide");
  std::vector<Integer> rem(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  const Integer& lb = b.leading();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    Integer& top = rem[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
      throw std::logic_error("exact_quotient: quotient is not integral");
    Integer qk;
    mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    const auto shift = static_cast<std::size_t>(k - db);
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[shift + static_cast<std::size_t>(j)].get_mpz_t(), qk.get_mpz_t(),
                 b.coefficients()[static_cast<std::size_t>(j)].get_mpz_t());
    }
    q[shift] = qk;
  }
  for (int j = 0; j < db; ++j) {
    if (rem[static_cast<std::size_t>(j)] != 0) throw std::logic_error("exact_quotient: nonzero remainder");
  }
  return IntPoly(std::move(q));
}

namespace {

IntPoly positive_primitive(const IntPoly& f) {
  IntPoly p = content_primitive(f).primitive;
  if (p.leading() < 0) p = -p;
  return p;
}

}  // namespace

IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  if (a.is_zero()) return positive_primitive(b);
  if (b.is_zero()) return positive_primitive(a);
  IntPoly x = positive_primitive(a);
  IntPoly y = positive_primitive(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return IntPoly{1};
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? IntPoly{} : positive_primitive(r);
  }
  return x;
}

std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& f) {
  if (f.is_constant()) throw std::domain_error("squarefree decomposition of a constant");
  const IntPoly fp = f.derivative();
  IntPoly a = gcd_primitive(f, fp);
  IntPoly b = exact_quotient(f, a);
  IntPoly c = exact_quotient(fp, a);
  IntPoly d = c - b.derivative();
  std::vector<SquarefreeFactor> out;
  unsigned i = 1;
  while (b.degree() > 0) {
    a = gcd_primitive(b, d);
    IntPoly next_b = exact_quotient(b, a);
    c = d.is_zero() ? IntPoly{} : exact_quotient(d, a);
    if (a.degree() > 0) out.push_back({a, i});
    b = std::move(next_b);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resultant and discriminant

namespace {

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

bool odd(int n) { return (n & 1) != 0; }

}  // namespace

Integer resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant with the zero polynomial");
  IntPoly A = f;
  IntPoly B = g;
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if (odd(A.degree()) && odd(B.degree())) s = -s;
  }
  if (B.degree() == 0) return ipow(B.leading(), static_cast<unsigned long>(A.degree()));

  const Integer a = A.content();
  const Integer b = B.content();
  A = A.divexact(a);
  B = B.divexact(b);
  const Integer t = ipow(a, static_cast<unsigned long>(B.degree())) * ipow(b, static_cast<unsigned long>(A.degree()));
  Integer gg = 1;
  Integer h = 1;
  while (true) {
    const int delta = A.degree() - B.degree();
    if (odd(A.degree()) && odd(B.degree())) s = -s;
    IntPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    if (R.is_zero()) return 0;
    B = R.divexact(gg * ipow(h, static_cast<unsigned long>(delta)));
    gg = A.leading();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = gg;
    } else {
      Integer num = ipow(gg, static_cast<unsigned long>(delta));
      Integer den = ipow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() == 0) break;
  }
  const int da = A.degree();
  Integer num = ipow(B.leading(), static_cast<unsigned long>(da));
  Integer den = ipow(h, static_cast<unsigned long>(da - 1));
  Integer last;
  mpz_divexact(last.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Integer(s) * t * last;
}

Rational discriminant(const IntPoly& f) {
  if (f.degree() < 1) throw std::domain_error("discriminant needs degree >= 1");
  const int n = f.degree();
  if (n == 1) return 1;
  Rational d(resultant(f, f.derivative()), f.leading());
  d.canonicalize();
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  return (pairs % 2 == 0) ? d : Rational(-d);
}

// ---------------------------------------------------------------------------
// Newton polygon

std::vector<NewtonSlope> newton_polygon(const IntPoly& f, const Integer& p) {
  if (f.degree() < 1) throw std::domain_error("Newton polygon of a constant");
  const auto coeffs = f.coefficients();
  std::vector<NewtonSlope> out;
  std::size_t first = 0;
  while (coeffs[first] == 0) ++first;
  if (first > 0) out.push_back({Rational(0), first, true});

  struct Pt {
    long x;
    long y;
  };
  std::vector<Pt> pts;
  for (std::size_t j = first; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    pts.push_back({static_cast<long>(j), val_p(coeffs[j], p)});
  }
  // Lower hull, monotone chain (x strictly increasing).
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& o = hull[hull.size() - 2];
      const Pt& a = hull.back();
      const long cross = (a.x - o.x) * (q.y - o.y) - (a.y - o.y) * (q.x - o.x);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(q);
  }
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const long dx = hull[k].x - hull[k - 1].x;
    const long dy = hull[k].y - hull[k - 1].y;
    Rational slope(dy, dx);
    slope.canonicalize();
    out.push_back({Rational(-slope), static_cast<std::size_t>(dx), false});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer factorization

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

constexpr unsigned long kTrialBound = 10000;
constexpr unsigned long kRhoBudget = 1UL << 24;

bool pollard_brent(const Integer& n, Integer& factor, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) {
    factor = 2;
    return true;
  }
  const auto step = [&n](Integer& v, const Integer& c) {
    mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
    mpz_add(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  for (int attempt = 0; attempt < 16; ++attempt) {
    Integer y = Integer(static_cast<unsigned long>(rng() % 1000003UL)) % n;
    const Integer c = Integer(static_cast<unsigned long>(1 + rng() % 1000003UL)) % n;
    constexpr unsigned long m = 128;
    Integer g = 1;
    Integer q = 1;
    Integer x;
    Integer ys;
    Integer diff;
    unsigned long r = 1;
    unsigned long iterations = 0;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y, c);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        const unsigned long limit = std::min(m, r - k);
        for (unsigned long i = 0; i < limit; ++i) {
          step(y, c);
          mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
          mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
          mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += limit;
        iterations += limit;
      }
      r *= 2;
      if (iterations > kRhoBudget) break;
    }
    if (g == 1) return false;
    if (g == n) {
      do {
        step(ys, c);
        mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) {
      factor = g;
      return true;
    }
  }
  return false;
}

void factor_into(const Integer& n, std::map<Integer, unsigned long>& acc, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    acc[n] += 1;
    return;
  }
  Integer d;
  if (!pollard_brent(n, d, rng)) {
    throw std::runtime_error("factorization budget exhausted on composite " + n.get_str());
  }
  factor_into(d, acc, rng);
  Integer rest;
  mpz_divexact(rest.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  factor_into(rest, acc, rng);
}

}  // namespace

std::vector<PrimePower> factor_integer(const Integer& n) {
  if (n == 0) throw std::domain_error("factorization of zero");
  Integer m = abs(n);
  std::map<Integer, unsigned long> acc;
  for (unsigned long p = 2; p <= kTrialBound && m > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned long e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      acc[Integer(p)] = e;
    }
    if (Integer(p) * p > m) break;
  }
  if (m > 1) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    factor_into(m, acc, rng);
  }
  std::vector<PrimePower> out;
  out.reserve(acc.size());
  for (auto& [p, e] : acc) out.push_back({p, e});
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace adelic

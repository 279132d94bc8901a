#include "adelic/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace adelic {

using Complex = std::complex<long double>;

long double to_long_double(const Integer& n) {
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits <= 64) {
    const Integer a = abs(n);
    const long double x = static_cast<long double>(mpz_get_ui(a.get_mpz_t()));
    return n < 0 ? -x : x;
  }
  Integer top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), n.get_mpz_t(), bits - 64);
  const Integer a = abs(top);
  const long double x = std::ldexp(static_cast<long double>(mpz_get_ui(a.get_mpz_t())), static_cast<int>(bits - 64));
  return n < 0 ? -x : x;
}

namespace {

constexpr long double kUnit = std::numeric_limits<long double>::epsilon() / 2;

struct Poly {
  std::vector<long double> c;  // ascending
  std::vector<long double> rev;
  int n = 0;
};

// p(z) and p'(z)/p(z)-style Newton correction, evaluated via the reversed
// polynomial outside the unit disk so that large |z| does not overflow.
Complex newton_correction(const Poly& p, Complex z) {
  if (std::abs(z) <= 1.0L) {
    Complex v = p.c[p.n];
    Complex d = 0;
    for (int j = p.n - 1; j >= 0; --j) {
      d = d * z + v;
      v = v * z + p.c[j];
    }
    if (d == Complex(0)) return v == Complex(0) ? Complex(0) : Complex(std::numeric_limits<long double>::infinity());
    return v / d;
  }
  const Complex y = 1.0L / z;
  Complex q = p.rev[p.n];
  Complex dq = 0;
  for (int j = p.n - 1; j >= 0; --j) {
    dq = dq * y + q;
    q = q * y + p.rev[j];
  }
  // p'/p = y (n - y q'(y)/q(y)).
  if (q == Complex(0)) return 0;
  const Complex ratio = y * (static_cast<long double>(p.n) - y * dq / q);
  if (ratio == Complex(0)) return Complex(std::numeric_limits<long double>::infinity());
  return 1.0L / ratio;
}

// Bini's initial points: circles with radii read off the upper convex hull of
// (j, log|c_j|).
std::vector<Complex> initial_guesses(const Poly& p) {
  std::vector<int> idx;
  std::vector<long double> lg(p.n + 1, -std::numeric_limits<long double>::infinity());
  for (int j = 0; j <= p.n; ++j) {
    if (p.c[j] != 0) lg[j] = std::log(std::fabs(p.c[j]));
  }
  for (int j = 0; j <= p.n; ++j) {
    if (p.c[j] == 0) continue;
    while (idx.size() >= 2) {
      const int a = idx[idx.size() - 2];
      const int b = idx.back();
      const long double cross = (lg[b] - lg[a]) * (j - a) - (lg[j] - lg[a]) * (b - a);
      if (cross <= 0) {
        idx.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(j);
  }
  std::vector<Complex> z;
  z.reserve(p.n);
  const long double sigma = 0.7L;
  for (std::size_t s = 0; s + 1 < idx.size(); ++s) {
    const int a = idx[s];
    const int b = idx[s + 1];
    const int k = b - a;
    const long double r = std::exp((lg[a] - lg[b]) / k);
    for (int t = 0; t < k; ++t) {
      const long double th = 2.0L * std::numbers::pi_v<long double> * t / k +
                             2.0L * std::numbers::pi_v<long double> * s / p.n + sigma;
      z.push_back(std::polar(r, th));
    }
  }
  return z;
}

// Upper bound on |p(z)| including rounding of coefficient conversion and Horner.
long double residual_bound(const std::vector<long double>& c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  const long double r = std::abs(z);
  Complex v = c[n];
  long double mag = std::fabs(c[n]);
  for (int j = n - 1; j >= 0; --j) {
    v = v * z + c[j];
    mag = mag * r + std::fabs(c[j]);
  }
  // Coefficients carry relative error u; complex Horner error <= gamma_{4n} * sum |c_j| r^j.
  const long double gamma = (4.0L * n + 2.0L) * kUnit / (1.0L - (4.0L * n + 2.0L) * kUnit);
  return std::abs(v) + gamma * mag * 1.01L;
}

bool certify(const Poly& p, const std::vector<Complex>& z, long double tol, std::vector<long double>& radius) {
  const int n = p.n;
  radius.assign(n, 0.0L);
  for (int i = 0; i < n; ++i) {
    // |W_i| = |p(z_i)| / (|lc| prod_{j != i} |z_i - z_j|), computed in logs to avoid overflow.
    const long double res = residual_bound(p.c, z[i]);
    long double log_den = std::log(std::fabs(p.c[n]));
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const long double d = std::abs(z[i] - z[j]);
      if (d == 0) return false;
      log_den += std::log(d);
    }
    // Relative slack for rounding in the product and the logs.
    const long double slack = 1.0L + (8.0L * n + 8.0L) * kUnit;
    if (res == 0) {
      radius[i] = std::abs(z[i]) * 4.0L * kUnit;
    } else {
      radius[i] = static_cast<long double>(n) * std::exp(std::log(res) - log_den) * slack;
    }
    radius[i] = std::max(radius[i], std::abs(z[i]) * 4.0L * kUnit);
    if (!(radius[i] <= tol * std::max(1.0L, std::abs(z[i])))) return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!(std::abs(z[i] - z[j]) > radius[i] + radius[j])) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<RootDisk> certified_roots(const IntPoly& f, const RootOptions& options) {
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("certified_roots needs degree >= 1");
  if (static_cast<unsigned>(n) > options.max_degree)
    throw std::invalid_argument("degree " + std::to_string(n) + " exceeds the root-finding cap of " +
                                std::to_string(options.max_degree));
  if (n == 1) {
    Rational r(-f.coeff(0), f.coeff(1));
    r.canonicalize();
    const long double x = to_long_double(r.get_num()) / to_long_double(r.get_den());
    return {RootDisk{Complex(x, 0.0L), std::fabs(x) * 4.0L * kUnit}};
  }

  Poly p;
  p.n = n;
  p.c.resize(n + 1);
  for (int j = 0; j <= n; ++j) p.c[j] = to_long_double(f.coeff(j));
  p.rev.assign(p.c.rbegin(), p.c.rend());

  std::vector<RootDisk> out;
  // A squarefree polynomial has at most a simple root at 0.
  if (f.coeff(0) == 0) {
    IntPoly g(std::vector<Integer>(f.coefficients().begin() + 1, f.coefficients().end()));
    std::vector<RootDisk> rest = n - 1 >= 1 ? certified_roots(g, options) : std::vector<RootDisk>{};
    for (const RootDisk& d : rest) {
      if (!(std::abs(d.center) > d.radius)) throw std::runtime_error("root enclosure touches the exact root 0");
    }
    rest.push_back(RootDisk{Complex(0), 0.0L});
    return rest;
  }

  std::vector<Complex> z = initial_guesses(p);
  std::vector<bool> done(n, false);
  std::vector<long double> radius;
  for (unsigned it = 0; it < options.max_iterations; ++it) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Complex N = newton_correction(p, z[i]);
      Complex s = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) s += 1.0L / (z[i] - z[j]);
      }
      const Complex w = N / (1.0L - N * s);
      if (std::isfinite(w.real()) && std::isfinite(w.imag())) z[i] -= w;
      if (std::abs(w) <= 8.0L * kUnit * std::max(1.0L, std::abs(z[i]))) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done || (it % 16 == 15 && certify(p, z, options.tolerance, radius))) break;
  }
  if (!certify(p, z, options.tolerance, radius)) {
    // A final round of plain Aberth steps on every root before giving up.
    for (int round = 0; round < 8; ++round) {
      for (int i = 0; i < n; ++i) {
        const Complex N = newton_correction(p, z[i]);
        Complex s = 0;
        for (int j = 0; j < n; ++j) {
          if (j != i) s += 1.0L / (z[i] - z[j]);
        }
        const Complex w = N / (1.0L - N * s);
        if (std::isfinite(w.real()) && std::isfinite(w.imag())) z[i] -= w;
      }
      if (certify(p, z, options.tolerance, radius)) break;
    }
    if (!certify(p, z, options.tolerance, radius))
      throw std::runtime_error("could not certify the roots of a degree-" + std::to_string(n) +
                               " polynomial to tolerance " + std::to_string(static_cast<double>(options.tolerance)));
  }
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(RootDisk{z[i], radius[i]});
  return out;
}

}  // namespace adelic

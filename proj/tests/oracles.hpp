#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check: resultants come from Sylvester
// determinants, Fekete sums from explicit pairwise loops over known roots,
// ex5 weights from their own clamp formula.

#include "adelic/exact_arith.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using adelic::Integer;
using adelic::IntPoly;
using adelic::Rational;

// Determinant by Gaussian elimination over Q.
inline Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// det of the Sylvester matrix: lc(f)^{deg g} lc(g)^{deg f} prod (alpha - beta).
inline Integer sylvester_resultant(const IntPoly& f, const IntPoly& g) {
  const int m = f.degree();
  const int n = g.degree();
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, 0));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j <= m; ++j) s[r][r + j] = f.coeff(m - j);
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) s[n + r][r + j] = g.coeff(n - j);
  }
  const Rational d = determinant(s);
  return Integer(d.get_num());
}

inline long valuation(Rational q, long p) {
  long v = 0;
  Integer num = q.get_num();
  Integer den = q.get_den();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

inline std::vector<std::pair<long, int>> trial_factor(long n) {
  std::vector<std::pair<long, int>> out;
  if (n < 0) n = -n;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// A divisor given by its rational support points.
struct RationalDivisor {
  std::vector<std::pair<Rational, unsigned>> points;  // distinct roots with multiplicity
  unsigned inf_mult = 0;

  unsigned degree() const {
    unsigned d = inf_mult;
    for (const auto& [w, m] : points) d += m;
    return d;
  }

  // prod (den z - num)^m, primitive up to sign.
  IntPoly polynomial() const {
    IntPoly f{1};
    for (const auto& [w, m] : points) {
      const IntPoly lin{Integer(-w.get_num()).get_si(), Integer(w.get_den()).get_si()};
      f = f * lin.pow(m);
    }
    return f;
  }
};

inline RationalDivisor random_rational_divisor(std::mt19937_64& rng, bool with_infinity) {
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 9);
  std::uniform_int_distribution<unsigned> count(1, 4);
  std::uniform_int_distribution<unsigned> mult(1, 3);
  RationalDivisor d;
  const unsigned k = count(rng);
  while (d.points.size() < k) {
    Rational w(num(rng), den(rng));
    w.canonicalize();
    bool fresh = true;
    for (const auto& [x, m] : d.points) fresh = fresh && x != w;
    if (fresh) d.points.emplace_back(w, mult(rng));
  }
  if (with_infinity) d.inf_mult = mult(rng);
  return d;
}

// prod over ordered pairs of distinct points of (w - w')^{m m'}.
inline Rational dstar_bruteforce(const RationalDivisor& d) {
  Rational out = 1;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    for (std::size_t j = 0; j < d.points.size(); ++j) {
      if (i == j) continue;
      const Rational diff = d.points[i].first - d.points[j].first;
      for (unsigned k = 0; k < d.points[i].second * d.points[j].second; ++k) out *= diff;
    }
  }
  return out;
}

enum class Family { trivial, standard, ex5 };

// m_p = ceil(c p^2 log p) for small p; long double is ample below p = 10^4.
inline long ex5_m(long p, long c = 1) {
  return static_cast<long>(std::ceil(static_cast<long double>(c) * p * p * std::log(static_cast<long double>(p))));
}

// g_p in units of log p; nullopt log_abs means the point 0, `infinite` the point infinity.
inline Rational weight_padic(Family f, long p, std::optional<Rational> log_abs, bool infinite) {
  if (f != Family::ex5) return 0;
  Rational s(1, 2 * ex5_m(p));
  s.canonicalize();
  if (infinite) return s;
  if (!log_abs) return -s;
  Rational v = s + *log_abs;
  if (v > s) v = s;
  if (v < -s) v = -s;
  return v;
}

// Pairwise off-diagonal p-adic Fekete sum, in units of log p.
inline Rational fekete_padic_bruteforce(const RationalDivisor& d, Family f, long p) {
  auto log_abs = [&](const Rational& x) -> std::optional<Rational> {
    if (x == 0) return std::nullopt;
    return Rational(-valuation(x, p));
  };
  auto log_max1 = [&](const Rational& x) -> Rational {
    const auto l = log_abs(x);
    return l && *l > 0 ? *l : Rational(0);
  };
  Rational total = 0;
  const Rational g_inf = weight_padic(f, p, std::nullopt, true);
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const auto& [w, m] = d.points[i];
    const Rational gw = weight_padic(f, p, log_abs(w), false);
    for (std::size_t j = 0; j < d.points.size(); ++j) {
      if (i == j) continue;
      const auto& [u, n] = d.points[j];
      const Rational gu = weight_padic(f, p, log_abs(u), false);
      const Rational phi = *log_abs(w - u) - log_max1(w) - log_max1(u) - gw - gu;
      total += Rational(m * n) * phi;
    }
    // (w, inf) and (inf, w).
    total += Rational(2 * m * d.inf_mult) * (-log_max1(w) - gw - g_inf);
  }
  return total;
}

// Archimedean g-weights in closed form.
inline long double weight_arch(Family f, std::complex<long double> z, bool infinite) {
  if (f == Family::standard) {
    if (infinite) return 0.0L;
    const long double r = std::abs(z);
    return std::log(std::max(1.0L, r)) - 0.5L * std::log(1.0L + r * r);
  }
  return -0.25L;
}

// Direct archimedean Fekete sum over given complex support points.
inline long double fekete_arch_bruteforce(const std::vector<std::pair<std::complex<long double>, unsigned>>& pts,
                                          unsigned inf_mult, Family f) {
  long double total = 0.0L;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto [z, m] = pts[i];
    const long double az = std::abs(z);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const auto [w, n] = pts[j];
      const long double aw = std::abs(w);
      const long double chord = std::abs(z - w) / std::sqrt((1.0L + az * az) * (1.0L + aw * aw));
      total += m * n * (std::log(chord) - weight_arch(f, z, false) - weight_arch(f, w, false));
    }
    const long double chord_inf = 1.0L / std::sqrt(1.0L + az * az);
    total += 2.0L * m * inf_mult * (std::log(chord_inf) - weight_arch(f, z, false) - weight_arch(f, 0, true));
  }
  return total;
}

}  // namespace oracle

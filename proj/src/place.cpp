#include "adelic/place.hpp"

#include "adelic/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace adelic {

Place Place::finite(const Integer& p) {
  if (!is_probable_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
  Place v;
  v.prime_ = p;
  return v;
}

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return archimedean();
  Integer p;
  if (text.empty() || p.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("not a place: '" + std::string(text) + "' (expected inf or a prime)");
  return finite(p);
}

std::string Place::to_string() const { return is_archimedean() ? "inf" : prime_.get_str(); }

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.is_archimedean() || b.is_archimedean()) {
    return static_cast<int>(a.is_archimedean()) <=> static_cast<int>(b.is_archimedean());
  }
  const int c = cmp(a.prime_, b.prime_);
  return c <=> 0;
}

LogValue log_abs(const Rational& q, const Place& v) {
  if (q == 0) throw std::domain_error("log_abs of zero");
  if (v.is_finite()) return LogValue::exact(Rational(-val_p(q, v.prime())), v.prime());
  const long double x = log_abs_rational(q);
  const double err = 8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(static_cast<double>(x)) + 1.0);
  return LogValue::approx(static_cast<double>(x), err);
}

bool product_formula_check(const Rational& q) {
  if (q == 0) throw std::domain_error("product formula is undefined at 0");
  Integer num = 1;
  Integer den = 1;
  long double finite_sum = 0.0L;
  const Integer a = abs(q.get_num());
  const Integer b = q.get_den();
  for (const auto& [p, k] : factor_integer(a)) {
    if (val_p(q, p) != static_cast<long>(k)) return false;
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), k);
    num *= pw;
    finite_sum -= static_cast<long double>(k) * log_abs_integer(p);
  }
  for (const auto& [p, k] : factor_integer(b)) {
    if (val_p(q, p) != -static_cast<long>(k)) return false;
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), k);
    den *= pw;
    finite_sum += static_cast<long double>(k) * log_abs_integer(p);
  }
  if (num != a || den != b) return false;
  const long double arch = log_abs_rational(q);
  const long double scale = std::fabs(arch) + std::fabs(finite_sum) + 1.0L;
  return std::fabs(arch + finite_sum) <= 64.0L * std::numeric_limits<long double>::epsilon() * scale;
}

bool RelevantPlaces::contains(const Place& v) const {
  if (std::binary_search(exceptional.begin(), exceptional.end(), v)) return true;
  return v.is_finite() && v.prime() <= prime_bound;
}

std::vector<Place> RelevantPlaces::enumerate() const {
  std::set<Place> all(exceptional.begin(), exceptional.end());
  if (prime_bound >= 2) {
    for (std::uint64_t p : primes_in_range(2, prime_bound)) all.insert(Place::finite(static_cast<unsigned long>(p)));
  }
  return {all.begin(), all.end()};
}

RelevantPlaces relevant_places(const EffectiveDivisor& z, const Weight& g, double tail_eps) {
  if (!(tail_eps > 0.0)) throw std::invalid_argument("tail_eps must be positive");
  return relevant_places(z, g, tail_eps, d_star_factored(z));
}

RelevantPlaces relevant_places(const EffectiveDivisor& z, const Weight& g, double tail_eps, const DStar& dstar) {
  if (!(tail_eps > 0.0)) throw std::invalid_argument("tail_eps must be positive");
  std::set<Integer> primes;
  for (const auto& [p, k] : factor_integer(abs(z.finite_part().leading()))) primes.insert(p);
  for (const auto& [p, e] : dstar.factorization) primes.insert(p);

  RelevantPlaces out;
  for (const Integer& p : primes) out.exceptional.push_back(Place::finite(p));
  out.exceptional.push_back(Place::archimedean());
  if (g.infinitely_supported()) {
    const double threshold = tail_eps / static_cast<double>(z.degree());
    const std::uint64_t bound = g.truncation_bound(threshold);
    if (bound > max_prime_bound()) {
      throw std::invalid_argument("tail_eps " + std::to_string(tail_eps) + " needs primes up to " +
                                  std::to_string(bound) + ", above the limit " +
                                  std::to_string(max_prime_bound()));
    }
    out.prime_bound = bound;
    out.tail_bound = g.tail_sum_bound(bound);
  }
  return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& visit) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi))) + 1;
  std::vector<std::uint64_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (composite[i]) continue;
      base.push_back(i);
      for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = true;
    }
  }
  constexpr std::uint64_t kSegment = 1 << 18;
  std::vector<char> mark(kSegment);
  for (std::uint64_t start = lo; start <= hi; start += kSegment) {
    const std::uint64_t end = std::min(hi, start + kSegment - 1);
    std::fill(mark.begin(), mark.end(), 1);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t j = std::max(p * p, (start + p - 1) / p * p);
      for (; j <= end; j += p) mark[j - start] = 0;
    }
    for (std::uint64_t n = start; n <= end; ++n) {
      if (mark[n - start]) visit(n);
    }
    if (end == hi) break;
  }
}

}  // namespace adelic

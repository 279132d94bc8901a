#pragma once

#include "adelic/divisor.hpp"
#include "adelic/exact_arith.hpp"
#include "adelic/log_value.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace adelic {

class Weight;

/// A place of Q: the archimedean one or a prime. N_v = 1 for every place.
/// Finite places sort by prime; the archimedean place sorts last.
class Place {
 public:
  static Place archimedean() { return Place(); }
  /// Throws std::invalid_argument unless p is a (probable) prime.
  static Place finite(const Integer& p);
  static Place finite(unsigned long p) { return finite(Integer(p)); }
  /// "inf" or a decimal prime.
  static Place parse(std::string_view text);

  bool is_archimedean() const { return prime_ == 0; }
  bool is_finite() const { return prime_ != 0; }
  const Integer& prime() const { return prime_; }

  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);

 private:
  Place() = default;
  Integer prime_ = 0;
};

/// log |q|_v: exact -val_p(q) log p at a finite place, log|q| with an error
/// bound at the archimedean place. Throws std::domain_error for q = 0.
LogValue log_abs(const Rational& q, const Place& v);

/// Reconstructs |q| from its prime factorization and compares exactly, i.e.
/// checks sum_p val_p(q) log p = log|q|_inf as an identity of factorizations.
bool product_formula_check(const Rational& q);

/// Places that can carry nonzero local terms for a divisor and weight.
///
/// `exceptional` lists the archimedean place and every prime dividing the
/// leading coefficient or d_star (sorted). When the weight is nontrivial at
/// infinitely many primes, every prime <= prime_bound is also relevant and
/// tail_bound certifies sum_{p > prime_bound} sup |g_p| <= tail_bound.
struct RelevantPlaces {
  std::vector<Place> exceptional;
  std::uint64_t prime_bound = 0;
  double tail_bound = 0.0;

  bool contains(const Place& v) const;
  /// Explicit list: exceptional places merged with all primes <= prime_bound.
  std::vector<Place> enumerate() const;
};

/// Primes dividing the leading coefficient or d_star, plus the archimedean
/// place, plus the weight's truncation range. Throws std::invalid_argument if
/// tail_eps <= 0 or the truncation range exceeds max_prime_bound().
RelevantPlaces relevant_places(const EffectiveDivisor& z, const Weight& g, double tail_eps);
/// Same, reusing an already factored d_star(z).
RelevantPlaces relevant_places(const EffectiveDivisor& z, const Weight& g, double tail_eps, const DStar& dstar);

/// Largest truncation bound relevant_places will accept.
constexpr std::uint64_t max_prime_bound() { return 2'000'000'000ULL; }

/// Primes in [lo, hi] by a segmented sieve.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);
/// Calls visit(p) for each prime in [lo, hi] in increasing order, without storing them.
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& visit);

}  // namespace adelic

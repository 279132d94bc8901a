#pragma once

#include "adelic/divisor.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace adelic {

/// Outcome of a self-check suite. Each failure carries a one-line
/// counterexample description.
struct VerifyResult {
  std::string suite;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Suites: "productformula", "identity", "ex5", "lemma43".
/// Throws std::invalid_argument for an unknown suite name.
VerifyResult run_verify(const std::string& suite, std::uint64_t seed = 1);
std::vector<std::string> verify_suites();

/// Random integer polynomial with coefficients in [-bound, bound], degree
/// exactly `degree` and nonzero constant term.
IntPoly random_poly(std::mt19937_64& rng, int degree, long bound);
/// Random squarefree polynomial of the given degree (resampled until squarefree).
IntPoly random_squarefree_poly(std::mt19937_64& rng, int degree, long bound);
/// Random divisor of finite degree <= max_degree built from small random
/// factors raised to random multiplicities, with an optional multiplicity at
/// infinity.
EffectiveDivisor random_divisor(std::mt19937_64& rng, int max_degree, bool with_infinity);
/// Random nonzero rational with numerator and denominator below 10^digits.
Rational random_rational(std::mt19937_64& rng, int digits);

}  // namespace adelic

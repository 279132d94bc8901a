#pragma once

#include "adelic/divisor.hpp"
#include "adelic/local_potential.hpp"
#include "adelic/place.hpp"
#include "adelic/roots.hpp"
#include "adelic/weight.hpp"

#include <cstdint>
#include <optional>
#include <ranges>
#include <string>
#include <variant>
#include <vector>

namespace adelic {

struct GlobalOptions {
  double tail_eps = 1e-9;
  RootOptions roots;
  /// Compute only these places. The result is then not a certified global
  /// quantity and is flagged incomplete.
  std::optional<std::vector<Place>> places;
  /// Truncate at this prime bound instead of the one derived from tail_eps;
  /// must be at least that one.
  std::optional<std::uint64_t> prime_bound;
};

/// Closed interval containing a global quantity.
struct HeightInterval {
  double lo = 0.0;
  double hi = 0.0;
  double tail_bound = 0.0;   // contribution of places beyond the truncation
  double float_error = 0.0;  // archimedean and summation error
  double center() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Aggregate over the primes p <= prime_bound outside the explicit rows, where
/// every root is a p-adic unit or zero and the weight is a function of p alone.
/// Values are natural-log reals with a combined error bound.
struct BulkSummary {
  std::uint64_t prime_bound = 0;
  std::uint64_t prime_count = 0;
  std::uint64_t first_prime = 0;  // smallest bulk prime (largest |g_p|), 0 if none
  long double mahler_g = 0.0L;        // sum of M_g over bulk primes
  long double diagonal_weight = 0.0L; // sum of sum_w ord^2 g(w)
  long double fekete = 0.0L;          // sum of (Z,Z)_g
  long double fekete_max_abs = 0.0L;  // max |(Z,Z)_g| over bulk primes
  long double error = 0.0L;           // bound for each of the sums above
};

struct GlobalReport {
  std::string divisor;
  std::string weight;
  unsigned degree = 0;
  std::uint64_t diagonal_mass = 0;
  Rational diag_ratio;
  Rational dstar;
  /// |D*| equals the product of p^{val_p(D*)} over the finite rows (exactly).
  bool dstar_product_formula = false;

  std::vector<LocalReport> rows;  // explicit places, finite ascending, archimedean last
  BulkSummary bulk;
  double tail_bound = 0.0;  // certified bound on sum_{p > prime_bound} sup |g_p|
  bool complete = true;

  HeightInterval height;
  /// sum_v (Z,Z)_v / d^2 with error bound (tail included in the error).
  double fekete_total = 0.0;
  double fekete_total_error = 0.0;
  /// max_v |(Z,Z)_v| / d^2 over computed places, and the label of the maximizing place.
  double uniform_sup = 0.0;
  std::string uniform_sup_place;
  /// max(uniform_sup, 4 * tail_bound): bounds the supremum over all places.
  double uniform_sup_bound = 0.0;

  /// Per-place identity: both routes agree at every row.
  bool local_identity = false;
  /// sum_v (Z,Z)_v - [-2 d^2 h + 2 sum_v S2_v - 2 sum_v S3_v], S2 the diagonal
  /// weight term and S3 the diagonal cross term, and its error bound.
  double identity_residual = 0.0;
  double identity_error = 0.0;
  bool identity_holds = false;
  /// The same relation with the S3 term dropped holds as an inequality (>=).
  bool inequality_holds = false;
};

/// h_g(Z) = sum_v M_g(Z)_v / deg Z as a certified interval.
HeightInterval height(const EffectiveDivisor& z, const Weight& g, const GlobalOptions& options = {});

GlobalReport global_fekete(const EffectiveDivisor& z, const Weight& g, const GlobalOptions& options = {});

struct UniformSup {
  double value = 0.0;       // max over computed places of |(Z,Z)_v| / d^2
  double excluded = 0.0;    // 4 * tail bound, covering every other place
  double bound = 0.0;       // max of the two
};
UniformSup uniform_sup(const EffectiveDivisor& z, const Weight& g, const GlobalOptions& options = {});

// ---------------------------------------------------------------------------
// Finite-stage certificate for a doubly indexed sequence a[n][m] <= b[m].

struct Lemma43Input {
  /// a[n][m] for m < M (the head of each row).
  std::vector<std::vector<double>> rows;
  /// Certified enclosure [lo, hi] of the full row sum sum_m a[n][m].
  std::vector<std::pair<double, double>> row_sums;
  /// b[m] for m < M; every supplied a[n][m] must satisfy a[n][m] <= b[m].
  std::vector<double> b;
  /// Certified bound on sum_{m >= M} b[m].
  double tail_bound = 0.0;
  double eps = 0.0;
};

struct Lemma43Certificate {
  std::size_t row = 0;
  double head_sup = 0.0;    // max_{m < M} |a[n][m]|
  double tail_upper = 0.0;  // a[n][m] <= tail_upper for m >= M
  double tail_lower = 0.0;  // a[n][m] >= tail_lower for m >= M
  double sup_bound = 0.0;   // sup over all m of |a[n][m]| <= sup_bound < eps
};

enum class Lemma43Hypothesis { tail_bound, row_sum, head_sup };
std::string to_string(Lemma43Hypothesis h);

struct Lemma43Refusal {
  Lemma43Hypothesis violated = Lemma43Hypothesis::tail_bound;
  std::size_t row = 0;
  std::string message;
};

/// One certificate per row, or the first violated hypothesis. Throws
/// std::invalid_argument on malformed input (shape mismatch, b < 0, a > b,
/// eps <= 0, inverted enclosure).
std::variant<std::vector<Lemma43Certificate>, Lemma43Refusal> lemma43_certify(const Lemma43Input& input);

// ---------------------------------------------------------------------------
// Divisor sequences

struct SequenceSpec {
  enum class Family { unit_roots, pow_minus, preimages };
  Family family = Family::unit_roots;
  long parameter = 0;  // a for pow_minus, c for preimages
  unsigned n_min = 1;
  unsigned n_max = 1;

  /// "unit_roots", "pow:<a>" or "preimages:<c>". For preimages the index is
  /// the depth, so member n has degree 2^n.
  static SequenceSpec parse(const std::string& family, unsigned n_min, unsigned n_max);
  std::string name() const;
};

/// Member n of the sequence. Throws std::invalid_argument for a degenerate spec.
EffectiveDivisor sequence_member(const SequenceSpec& spec, unsigned n);

/// Lazy range over n = n_min..n_max of sequence_member(spec, n).
inline auto generate(const SequenceSpec& spec) {
  sequence_member(spec, spec.n_min);
  return std::views::iota(spec.n_min, spec.n_max + 1) |
         std::views::transform([spec](unsigned n) { return sequence_member(spec, n); });
}

struct ExperimentRow {
  unsigned n = 0;
  GlobalReport report;
  double fekete_arch = 0.0;        // (Z,Z)_inf / d^2
  double fekete_max_finite = 0.0;  // (Z,Z)_p / d^2 with the largest |.| over finite places
};

struct ExperimentTable {
  SequenceSpec spec;
  std::string weight;
  std::vector<ExperimentRow> rows;
  /// Surrogate for small diagonals: the diagonal ratio decreases from the
  /// first to the last row and no row of degree >= 2 has ratio 1.
  bool small_diagonals = true;
  std::string small_diagonal_note;
};

struct ExperimentOptions {
  GlobalOptions global;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Evaluates every member of the sequence (rows in parallel). All rows share
/// one prime truncation, chosen for the largest degree.
ExperimentTable experiment_run(const SequenceSpec& spec, const Weight& g, const ExperimentOptions& options = {});

}  // namespace adelic

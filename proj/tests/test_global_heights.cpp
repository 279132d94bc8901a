#include "adelic/global_heights.hpp"
#include "adelic/report_io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace adelic;

namespace {

const double ln2 = std::log(2.0);

EffectiveDivisor pow_minus(unsigned n, long a) { return EffectiveDivisor(IntPoly::monomial(1, n) - IntPoly{a}, 0); }

}  // namespace

TEST_CASE("standard heights") {
  for (unsigned n : {1u, 2u, 5u, 16u}) {
    const HeightInterval h = height(pow_minus(n, 2), Weight::standard());
    CHECK(h.contains(ln2 / n));
    CHECK(h.width() < 1e-12);
  }
  CHECK(height(pow_minus(7, 1), Weight::standard()).contains(0.0));
  CHECK(height(divisor_from_poly({-2, 1}), Weight::standard()).center() == doctest::Approx(ln2).epsilon(1e-14));
  CHECK(height(divisor_from_poly({-1, 2}), Weight::standard()).center() == doctest::Approx(ln2).epsilon(1e-14));
  // 3/5 has Weil height log 5.
  CHECK(height(divisor_from_poly({-3, 5}), Weight::standard()).center() == doctest::Approx(std::log(5.0)).epsilon(1e-14));
}

TEST_CASE("heights are invariant under integer scalar multiples") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 15; ++t) {
    const IntPoly f = oracle::random_rational_divisor(rng, false).polynomial();
    for (const Weight& g : {Weight::trivial(), Weight::standard(), Weight::ex5()}) {
      GlobalOptions opt;
      opt.tail_eps = 1e-5;
      const HeightInterval a = height(EffectiveDivisor(f, 1), g, opt);
      const HeightInterval b = height(EffectiveDivisor(f * Integer(-12), 1), g, opt);
      CHECK(a.lo == b.lo);
      CHECK(a.hi == b.hi);
    }
  }
}

TEST_CASE("trivial and ex5 heights of simple divisors") {
  // z - 1 with the trivial weight: -1/4 + (1/2) log 2 at infinity only.
  const HeightInterval t = height(divisor_from_poly({-1, 1}), Weight::trivial());
  CHECK(t.contains(-0.25 + 0.5 * ln2));
  // ex5: h grows by sum_p g_p(1) = sum_p t_p/2 over all primes.
  GlobalOptions opt;
  opt.tail_eps = 1e-6;
  const HeightInterval e = height(divisor_from_poly({-1, 1}), Weight::ex5(), opt);
  long double head = 0.0L;
  for (std::uint64_t p : primes_in_range(2, 200000)) {
    head += 0.5L * std::log(static_cast<long double>(p)) / oracle::ex5_m(static_cast<long>(p));
  }
  const double base = -0.25 + 0.5 * ln2;
  CHECK(e.lo <= base + static_cast<double>(head) + 0.5 / 200000);
  CHECK(e.hi >= base + static_cast<double>(head));
  CHECK(e.width() <= opt.tail_eps + 2.0 * e.float_error);
}

TEST_CASE("global Fekete report for z^2 - 2 with the trivial weight") {
  const GlobalReport r = global_fekete(divisor_from_poly({-2, 0, 1}), Weight::trivial());
  CHECK(r.dstar == -8);
  CHECK(r.dstar_product_formula);
  CHECK(r.complete);
  CHECK(r.local_identity);
  CHECK(r.identity_holds);
  CHECK(r.inequality_holds);
  CHECK(std::fabs(r.identity_residual) < 1e-8);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].place == Place::finite(2UL));
  CHECK(r.rows[0].fekete.coefficient() == -3);
  const double arch = static_cast<double>(r.rows[1].fekete.value()) / 4.0;
  CHECK(r.uniform_sup == doctest::Approx(std::max(3.0 * ln2 / 4.0, std::fabs(arch))));
  std::ostringstream os;
  os << to_json(r);
  CHECK(os.str().find("\"coeff\":\"-3\",\"log_base\":2") != std::string::npos);
}

TEST_CASE("global identity and inequality on random divisors") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const EffectiveDivisor z(oracle::random_rational_divisor(rng, t % 2 == 0).polynomial() * IntPoly{2, 0, 3}, t % 3);
    for (const Weight& g : {Weight::trivial(), Weight::standard(), Weight::ex5()}) {
      GlobalOptions opt;
      opt.tail_eps = 1e-5;
      const GlobalReport r = global_fekete(z, g, opt);
      INFO(z.to_string() << " " << g.name());
      CHECK(r.local_identity);
      CHECK(r.identity_holds);
      CHECK(r.inequality_holds);
      CHECK(r.dstar_product_formula);
      const double d2 = double(r.degree) * r.degree;
      for (const LocalReport& row : r.rows) {
        CHECK(r.uniform_sup >= std::fabs(static_cast<double>(row.fekete.value())) / d2 - 1e-12);
        const UniformSup u = uniform_sup(z, g, opt);
        CHECK(u.bound >= u.value);
      }
      CHECK(r.uniform_sup >= static_cast<double>(r.bulk.fekete_max_abs) / d2 - 1e-15);
      CHECK(r.height.contains(r.height.center()));
    }
  }
}

TEST_CASE("degree-one divisors have vanishing Fekete entries") {
  const GlobalReport r = global_fekete(divisor_from_poly({-7, 3}), Weight::ex5(), GlobalOptions{1e-4, {}, {}, {}});
  for (const LocalReport& row : r.rows) CHECK(row.fekete.value() == 0.0L);
  CHECK(r.bulk.fekete == 0.0L);
  CHECK(r.uniform_sup == 0.0);
  CHECK(uniform_sup(divisor_from_poly({-7, 3}), Weight::standard()).value == 0.0);
}

TEST_CASE("explicit place lists are flagged incomplete") {
  GlobalOptions opt;
  opt.places = std::vector<Place>{Place::finite(3UL), Place::archimedean()};
  const GlobalReport r = global_fekete(divisor_from_poly({-2, 0, 1}), Weight::trivial(), opt);
  CHECK_FALSE(r.complete);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].place == Place::finite(3UL));
}

TEST_CASE("lemma43 examples") {
  Lemma43Input in;
  in.eps = 0.1;
  in.b = {1.0, 0.25};
  in.tail_bound = 1.0 / 48.0;
  in.rows = {{0.01, -0.012}, {-0.005, 0.0}};
  in.row_sums = {{-0.01, 0.02}, {-0.024, 0.024}};
  const auto res = lemma43_certify(in);
  const auto* certs = std::get_if<std::vector<Lemma43Certificate>>(&res);
  REQUIRE(certs != nullptr);
  REQUIRE(certs->size() == 2);
  for (const auto& c : *certs) {
    CHECK(c.sup_bound < 0.1);
    CHECK(c.sup_bound >= c.head_sup);
    CHECK(c.tail_upper <= 1.0 / 48.0);
  }

  Lemma43Input bad = in;
  bad.rows[0][1] = 0.3;
  CHECK_THROWS_AS(lemma43_certify(bad), std::invalid_argument);
  bad = in;
  bad.eps = 0.0;
  CHECK_THROWS_AS(lemma43_certify(bad), std::invalid_argument);
  bad = in;
  bad.row_sums.pop_back();
  CHECK_THROWS_AS(lemma43_certify(bad), std::invalid_argument);

  Lemma43Input loose;
  loose.eps = 10.0;
  loose.b = {1.0, 1.0};
  loose.tail_bound = 1.0;
  loose.rows = {{1.0, -1.0}};
  loose.row_sums = {{0.0, 1.0}};
  CHECK(std::holds_alternative<std::vector<Lemma43Certificate>>(lemma43_certify(loose)));

  Lemma43Input wide = in;
  wide.tail_bound = 0.03;
  const auto refused = lemma43_certify(wide);
  REQUIRE(std::holds_alternative<Lemma43Refusal>(refused));
  CHECK(std::get<Lemma43Refusal>(refused).violated == Lemma43Hypothesis::tail_bound);
  CHECK(to_string(Lemma43Hypothesis::head_sup) == "head_sup");
}

TEST_CASE("sequence generators") {
  const SequenceSpec u = SequenceSpec::parse("unit_roots", 4, 4);
  const EffectiveDivisor z4 = sequence_member(u, 4);
  CHECK(z4.finite_part() == IntPoly{-1, 0, 0, 0, 1});
  CHECK(small_diagonal_ratio(z4) == Rational(1, 4));
  CHECK(sequence_member(SequenceSpec::parse("pow:2", 1, 5), 3).finite_part() == IntPoly{-2, 0, 0, 1});
  const EffectiveDivisor p3 = sequence_member(SequenceSpec::parse("preimages:0", 1, 3), 3);
  CHECK(p3.finite_part() == IntPoly::monomial(1, 8));
  CHECK(small_diagonal_ratio(p3) == 1);
  // z^2 - 1 composed twice: (z^2 - 1)^2 - 1 = z^4 - 2z^2.
  CHECK(sequence_member(SequenceSpec::parse("preimages:-1", 1, 2), 2).finite_part() == IntPoly{0, 0, -2, 0, 1});
  CHECK_THROWS_AS(SequenceSpec::parse("pow:0", 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::parse("pow:1", 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::parse("unit_roots", 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::parse("spirals", 1, 3), std::invalid_argument);
  unsigned n = 2;
  for (const EffectiveDivisor& z : generate(SequenceSpec::parse("unit_roots", 2, 6))) CHECK(z.degree() == n++);
  CHECK(n == 7);
}

TEST_CASE("experiment runner and output") {
  ExperimentOptions opt;
  opt.threads = 2;
  const ExperimentTable t = experiment_run(SequenceSpec::parse("pow:2", 2, 12), Weight::standard(), opt);
  REQUIRE(t.rows.size() == 11);
  for (const ExperimentRow& row : t.rows) {
    CHECK(row.report.height.contains(ln2 / row.n));
    CHECK(row.report.degree == row.n);
  }
  CHECK(t.small_diagonals);

  const ExperimentTable pre = experiment_run(SequenceSpec::parse("preimages:0", 1, 5), Weight::standard(), opt);
  CHECK_FALSE(pre.small_diagonals);
  CHECK_FALSE(pre.small_diagonal_note.empty());
  REQUIRE(pre.rows.size() == 5);

  std::ostringstream os;
  write_csv(os, t);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,degree,diag_ratio,h_lo,h_hi,fekete_arch,fekete_max_finite,uniform_sup");
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 11);

  const auto dir = std::filesystem::temp_directory_path() / "adelic_test_output";
  std::filesystem::create_directories(dir);
  const std::string json_path = (dir / "t.json").string();
  write_experiment(json_path, t);
  std::ifstream j(json_path);
  const Json parsed = Json::parse(j);
  CHECK(parsed["rows"].size() == 11);
  CHECK(parsed["family"] == "pow:2");
  CHECK_THROWS_AS(write_experiment((dir / "t.txt").string(), t), std::runtime_error);
  try {
    write_experiment("/nonexistent-dir/x.csv", t);
    FAIL("expected an I/O error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("Fekete ratios stay below the energy plus 0.01 along generated sequences") {
  // The trivial weight has V = 0 at every place; its archimedean ratios fall
  // below 0.01 from n = 14 on. With the standard weight the ratio is
  // (log n)/n, which needs n > 647, beyond the root degree cap.
  ExperimentOptions opt;
  for (const std::string fam : {"unit_roots", "pow:2", "pow:-3"}) {
    const ExperimentTable t = experiment_run(SequenceSpec::parse(fam, 16, 48), Weight::trivial(), opt);
    for (const ExperimentRow& row : t.rows) {
      INFO(fam << " n=" << row.n);
      CHECK(row.fekete_arch <= 0.01);
      CHECK(row.fekete_max_finite <= 0.01);
    }
  }
  const ExperimentTable s = experiment_run(SequenceSpec::parse("unit_roots", 8, 8), Weight::standard(), opt);
  CHECK(s.rows[0].fekete_arch == doctest::Approx(std::log(8.0) / 8.0));
}

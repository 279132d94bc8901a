// Command-line front end: exact D*, heights, Fekete sums, experiments and
// self-checks. All output is JSON on stdout except `equidist`, which writes
// its table to --out.

#include "adelic/global_heights.hpp"
#include "adelic/local_potential.hpp"
#include "adelic/report_io.hpp"
#include "adelic/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

using namespace adelic;

namespace {

struct Common {
  unsigned prec = 40;
  double quad_tol = 1e-7;
  double tail_eps = 1e-9;
  std::string places = "auto";
};

RootOptions root_options(const Common& c) {
  if (c.prec < 8 || c.prec > 63)
    throw std::invalid_argument("--prec must be between 8 and 63 bits (root arithmetic is 64-bit long double)");
  RootOptions r;
  r.tolerance = std::ldexp(1.0L, -static_cast<int>(c.prec));
  return r;
}

GlobalOptions global_options(const Common& c) {
  GlobalOptions g;
  g.tail_eps = c.tail_eps;
  g.roots = root_options(c);
  if (c.places != "auto") {
    std::vector<Place> list;
    std::stringstream ss(c.places);
    std::string item;
    while (std::getline(ss, item, ',')) list.push_back(Place::parse(item));
    if (list.empty()) throw std::invalid_argument("--places needs at least one place");
    g.places = list;
  }
  return g;
}

EffectiveDivisor read_divisor(const std::string& poly, unsigned inf_mult) {
  return divisor_from_poly(parse_coefficients(poly), inf_mult);
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact adelic potential theory over Q: D*, g-heights, Fekete sums"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--prec", common.prec, "Root enclosure precision in bits (radius <= 2^-prec, max 63)")->capture_default_str();
  app.add_option("--quad-tol", common.quad_tol, "Quadrature tolerance for equilibrium energies")->capture_default_str();
  app.add_option("--tail-eps", common.tail_eps, "Truncation threshold for infinitely supported weights")->capture_default_str();
  app.add_option("--places", common.places, "auto, or an explicit list such as 2,3,inf (uncertified)")->capture_default_str();

  std::string poly;
  unsigned inf_mult = 0;
  std::string weight = "std";
  std::string place = "all";

  auto* dstar = app.add_subcommand("dstar", "D* as an exact rational with its per-place log table");
  dstar->add_option("--poly", poly, "Ascending coefficients c0,c1,...,cd")->required();
  dstar->add_option("--inf-mult", inf_mult, "Multiplicity at infinity");

  auto* height_cmd = app.add_subcommand("height", "Certified interval for the g-height");
  height_cmd->add_option("--poly", poly, "Ascending coefficients c0,c1,...,cd")->required();
  height_cmd->add_option("--inf-mult", inf_mult, "Multiplicity at infinity");
  height_cmd->add_option("--weight", weight, "trivial | std | ex5[:c]")->capture_default_str();
  height_cmd->add_option("--tail-eps", common.tail_eps, "Truncation threshold");

  auto* fekete = app.add_subcommand("fekete", "Local Fekete reports");
  fekete->add_option("--poly", poly, "Ascending coefficients c0,c1,...,cd")->required();
  fekete->add_option("--inf-mult", inf_mult, "Multiplicity at infinity");
  fekete->add_option("--weight", weight, "trivial | std | ex5[:c]")->capture_default_str();
  fekete->add_option("--place", place, "inf | <prime> | all")->capture_default_str();
  fekete->add_option("--tail-eps", common.tail_eps, "Truncation threshold");

  std::string family;
  unsigned n_min = 1;
  unsigned n_max = 0;
  std::string out_path;
  auto* equidist = app.add_subcommand("equidist", "Run a divisor sequence and write the experiment table");
  equidist->add_option("--family", family, "unit_roots | pow:<a> | preimages:<c>")->required();
  equidist->add_option("--n-min", n_min, "First index (depth for preimages)")->capture_default_str();
  equidist->add_option("--n-max", n_max, "Last index")->required();
  equidist->add_option("--weight", weight, "trivial | std | ex5[:c]")->capture_default_str();
  equidist->add_option("--out", out_path, "Output path ending in .csv or .json")->required();
  equidist->add_option("--tail-eps", common.tail_eps, "Truncation threshold");

  std::string suite;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run a self-check suite; exit code 1 on failure");
  verify->add_option("--suite", suite, "productformula | identity | ex5 | lemma43")->required();
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();

  auto* energy = app.add_subcommand("energy", "Equilibrium energy V_g at one place");
  energy->add_option("--weight", weight, "zero | trivial | std | ex5[:c]")->capture_default_str();
  energy->add_option("--place", place, "inf | <prime>")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (dstar->parsed()) {
      print(dstar_json(read_divisor(poly, inf_mult)));
    } else if (height_cmd->parsed()) {
      const EffectiveDivisor z = read_divisor(poly, inf_mult);
      const GlobalOptions opt = global_options(common);
      Json j = to_json(height(z, Weight::parse(weight), opt));
      j["divisor"] = z.to_string();
      j["weight"] = weight;
      j["complete"] = !opt.places.has_value();
      print(j);
    } else if (fekete->parsed()) {
      const EffectiveDivisor z = read_divisor(poly, inf_mult);
      const Weight g = Weight::parse(weight);
      if (place == "all") {
        print(to_json(global_fekete(z, g, global_options(common))));
      } else {
        print(to_json(local_report(z, g, Place::parse(place), root_options(common))));
      }
    } else if (equidist->parsed()) {
      const SequenceSpec spec = SequenceSpec::parse(family, n_min, n_max);
      ExperimentOptions opt;
      opt.global = global_options(common);
      const ExperimentTable table = experiment_run(spec, Weight::parse(weight), opt);
      write_experiment(out_path, table);
      if (!table.small_diagonals) {
        std::cerr << "warning: " << spec.name() << " fails the small-diagonal check: " << table.small_diagonal_note
                  << '\n';
      }
      std::cout << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
    } else if (verify->parsed()) {
      const VerifyResult r = run_verify(suite, seed);
      Json j{{"suite", r.suite}, {"cases", r.cases}, {"failures", r.failures.size()}, {"passed", r.passed()}};
      if (!r.passed()) j["counterexamples"] = r.failures;
      print(j);
      return r.passed() ? 0 : 1;
    } else if (energy->parsed()) {
      const Place v = Place::parse(place);
      EnergyOptions opt;
      opt.quad_tol = common.quad_tol;
      print(to_json(energy_breakdown(Weight::parse(weight), v, opt), v));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

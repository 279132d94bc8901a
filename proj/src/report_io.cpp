#include "adelic/report_io.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace adelic {

namespace {

Json prime_json(const Integer& p) {
  if (p.fits_ulong_p()) return p.get_ui();
  return p.get_str();
}

}  // namespace

Json to_json(const LogValue& v, const Place& place) {
  Json j;
  switch (v.kind()) {
    case LogValue::Kind::exact: {
      j["coeff"] = to_string(v.coefficient());
      const Integer base = v.prime() != 0 ? v.prime() : (place.is_finite() ? place.prime() : Integer(0));
      if (base != 0) {
        j["log_base"] = prime_json(base);
      } else {
        // The exact zero at the archimedean place.
        j = Json{{"value", 0.0}, {"error", 0.0}};
      }
      break;
    }
    case LogValue::Kind::approx:
      j["value"] = static_cast<double>(v.value());
      j["error"] = v.error();
      break;
    case LogValue::Kind::neg_infinity:
      j["value"] = "-inf";
      break;
  }
  return j;
}

Json to_json(const LocalReport& r) {
  Json j;
  j["place"] = r.place.to_string();
  j["exact"] = r.exact;
  j["log_abs_dstar"] = to_json(r.log_abs_dstar, r.place);
  j["mahler_sharp"] = to_json(r.mahler_sharp, r.place);
  j["mahler_g"] = to_json(r.mahler_g, r.place);
  j["diagonal_weight"] = to_json(r.diagonal_weight, r.place);
  j["diagonal_cross"] = to_json(r.diagonal_cross, r.place);
  j["fekete"] = to_json(r.fekete, r.place);
  j["fekete_check"] = to_json(r.fekete_check, r.place);
  return j;
}

Json to_json(const HeightInterval& h) {
  return Json{{"lo", h.lo}, {"hi", h.hi}, {"center", h.center()}, {"tail_bound", h.tail_bound}, {"float_error", h.float_error}};
}

Json to_json(const BulkSummary& b) {
  return Json{{"prime_bound", b.prime_bound},
              {"prime_count", b.prime_count},
              {"first_prime", b.first_prime},
              {"mahler_g", static_cast<double>(b.mahler_g)},
              {"diagonal_weight", static_cast<double>(b.diagonal_weight)},
              {"fekete", static_cast<double>(b.fekete)},
              {"fekete_max_abs", static_cast<double>(b.fekete_max_abs)},
              {"error", static_cast<double>(b.error)}};
}

Json to_json(const GlobalReport& r) {
  Json j;
  j["divisor"] = r.divisor;
  j["weight"] = r.weight;
  j["degree"] = r.degree;
  j["diagonal_mass"] = r.diagonal_mass;
  j["diag_ratio"] = to_string(r.diag_ratio);
  j["dstar"] = to_string(r.dstar);
  j["dstar_product_formula"] = r.dstar_product_formula;
  Json rows = Json::array();
  for (const LocalReport& row : r.rows) rows.push_back(to_json(row));
  j["rows"] = rows;
  j["bulk"] = to_json(r.bulk);
  j["tail_bound"] = r.tail_bound;
  j["complete"] = r.complete;
  j["height"] = to_json(r.height);
  j["fekete_total"] = Json{{"value", r.fekete_total}, {"error", r.fekete_total_error}};
  j["uniform_sup"] = Json{{"value", r.uniform_sup}, {"place", r.uniform_sup_place}, {"bound", r.uniform_sup_bound}};
  j["local_identity"] = r.local_identity;
  j["identity"] = Json{{"residual", r.identity_residual},
                       {"error", r.identity_error},
                       {"holds", r.identity_holds},
                       {"inequality_holds", r.inequality_holds}};
  return j;
}

Json to_json(const EnergyBreakdown& e, const Place& place) {
  Json j;
  j["place"] = place.to_string();
  j["energy"] = to_json(e.value, place);
  j["kernel_term"] = to_json(e.kernel_term, place);
  j["weight_term"] = to_json(e.weight_term, place);
  if (e.cross_check) j["cross_check"] = *e.cross_check;
  j["quadrature_error"] = e.quadrature_error;
  return j;
}

Json to_json(const ExperimentTable& t) {
  Json j;
  j["family"] = t.spec.name();
  j["n_min"] = t.spec.n_min;
  j["n_max"] = t.spec.n_max;
  j["weight"] = t.weight;
  j["small_diagonals"] = t.small_diagonals;
  if (!t.small_diagonal_note.empty()) j["small_diagonal_note"] = t.small_diagonal_note;
  Json rows = Json::array();
  for (const ExperimentRow& row : t.rows) {
    Json r;
    r["n"] = row.n;
    r["fekete_arch"] = row.fekete_arch;
    r["fekete_max_finite"] = row.fekete_max_finite;
    r["report"] = to_json(row.report);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

Json dstar_json(const EffectiveDivisor& z) {
  const DStar ds = d_star_factored(z);
  Json j;
  j["divisor"] = z.to_string();
  j["dstar"] = to_string(ds.value);
  Json fac = Json::array();
  Json places = Json::array();
  long double finite_sum = 0.0L;
  for (const auto& [p, e] : ds.factorization) {
    fac.push_back(Json{{"prime", prime_json(p)}, {"exponent", e}});
    const Place v = Place::finite(p);
    const LogValue l = log_abs(ds.value, v);
    finite_sum += l.value();
    places.push_back(Json{{"place", v.to_string()}, {"log_abs", to_json(l, v)}});
  }
  const LogValue arch = log_abs(ds.value, Place::archimedean());
  places.push_back(Json{{"place", "inf"}, {"log_abs", to_json(arch, Place::archimedean())}});
  j["factorization"] = fac;
  j["places"] = places;
  j["product_formula"] = product_formula_check(ds.value);
  j["sum_log_abs"] = static_cast<double>(finite_sum + arch.value());
  return j;
}

void write_csv(std::ostream& os, const ExperimentTable& t) {
  os << "n,degree,diag_ratio,h_lo,h_hi,fekete_arch,fekete_max_finite,uniform_sup\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const ExperimentRow& row : t.rows) {
    const GlobalReport& r = row.report;
    os << row.n << ',' << r.degree << ',' << r.diag_ratio.get_d() << ',' << r.height.lo << ',' << r.height.hi << ','
       << row.fekete_arch << ',' << row.fekete_max_finite << ',' << r.uniform_sup << '\n';
  }
}

void write_experiment(const std::string& path, const ExperimentTable& t) {
  const auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  const bool csv = ends_with(".csv");
  if (!csv && !ends_with(".json")) throw std::runtime_error("output path '" + path + "' must end in .csv or .json");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  if (csv) {
    write_csv(out, t);
  } else {
    out << to_json(t).dump(2) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

}  // namespace adelic

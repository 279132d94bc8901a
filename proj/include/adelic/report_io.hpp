#pragma once

#include "adelic/global_heights.hpp"
#include "adelic/local_potential.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace adelic {

using Json = nlohmann::ordered_json;

/// Exact values: {"coeff": "<rational>", "log_base": p}. Approximate values:
/// {"value": x, "error": e}. The diagonal marker: {"value": "-inf"}.
/// `place` supplies the log base of an exact zero.
Json to_json(const LogValue& v, const Place& place);
Json to_json(const LocalReport& r);
Json to_json(const HeightInterval& h);
Json to_json(const BulkSummary& b);
Json to_json(const GlobalReport& r);
Json to_json(const EnergyBreakdown& e, const Place& place);
Json to_json(const ExperimentTable& t);
/// D*, its factorization and log|D*|_v at every prime factor and at infinity.
Json dstar_json(const EffectiveDivisor& z);

/// CSV with columns n, degree, diag_ratio, h_lo, h_hi, fekete_arch,
/// fekete_max_finite, uniform_sup.
void write_csv(std::ostream& os, const ExperimentTable& t);

/// Writes CSV or JSON according to the extension of `path` (.csv or .json).
/// Throws std::runtime_error naming the file on any I/O failure.
void write_experiment(const std::string& path, const ExperimentTable& t);

}  // namespace adelic

#pragma once

#include <json.hpp>

#include "srisk/counterexample.hpp"
#include "srisk/law.hpp"
#include "srisk/mellin.hpp"
#include "srisk/ruin.hpp"
#include "srisk/sarmanov.hpp"
#include "srisk/tail_stats.hpp"

namespace srisk {

using Json = nlohmann::ordered_json;

/// {"family": name, "params": {...}}; see docs/schema.md. Throws ConfigError on schema violations.
LawPtr law_from_json(const Json& j);
Json law_to_json(const UnivariateLaw& law);

/// {"F": law, "G": law, "kernel": "fgm" | "independent" | {"type": "cdf_polynomial", ...}, "theta": r}.
SarmanovModel model_from_json(const Json& j);
Json model_to_json(const SarmanovModel& model);

Json to_json(const ValidationReport& report);
Json to_json(const RuinEstimate& estimate);
Json to_json(const TruncationPlan& plan);
Json to_json(const MellinScanResult& scan);  // summary only; the grid goes to CSV
Json to_json(const TailIndexEstimate& estimate);
Json to_json(const TailRatioReport& report);
Json to_json(const DominatedVariationReport& report);
Json to_json(const CounterexampleParams& params);
Json to_json(const CounterexampleBundle& bundle);
Json to_json(const DemonstrationReport& report);  // verdicts and constants; rows go to CSV

/// Field access with ConfigError on absence or type mismatch.
double require_number(const Json& j, const char* key);
double number_or(const Json& j, const char* key, double fallback);
std::vector<double> number_list(const Json& j, const char* key);

}  // namespace srisk

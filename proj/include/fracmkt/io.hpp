#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracmkt/calibration.hpp"
#include "fracmkt/endowments.hpp"
#include "fracmkt/experiments.hpp"
#include "fracmkt/metrics.hpp"
#include "fracmkt/model.hpp"

namespace fracmkt {

using Json = nlohmann::ordered_json;

// Parameters: a flat object keyed by ModelParams field names. Missing keys
// keep the value from `base`; unknown keys are a ConfigError.
Json params_to_json(const ModelParams& params);
ModelParams params_from_json(const Json& j, const ModelParams& base = {});

Json dist_to_json(const DistSpec& d);
DistSpec dist_from_json(const Json& j, std::string_view field);

/// Profile file contents: the profile, the seed its population is generated
/// from, and free-form calibration provenance.
struct ProfileDocument {
    EndowmentProfile profile;
    std::uint64_t population_seed = 0;
    Json calibration;  // null when hand-written
};

Json profile_to_json(const ProfileDocument& doc);
ProfileDocument profile_from_json(const Json& j);
ProfileDocument load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const ProfileDocument& doc);

/// The calibrated profile shipped with the library (data/default_profile.json).
const ProfileDocument& default_profile();
/// Population generated from default_profile() with its population seed.
const Population& default_population();

CalibrationTargets targets_from_json(const Json& j);
Json targets_to_json(const CalibrationTargets& t);

// Metric records. Full precision; an undefined liquidity ratio is null.
Json day_metrics_to_json(const DayMetrics& m);
Json aggregate_to_json(const AggregateMetrics& a);

/// Metric columns shared by the CSV tables, in table order.
std::span<const std::string_view> table_columns();

// CSV emitters, three decimals per value.
void write_day_metrics_csv(std::ostream& out, const DayMetrics& m);
void write_aggregate_csv(std::ostream& out, const AggregateMetrics& a);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
Json sweep_to_json(std::string_view parameter, std::span<const SweepRow> rows);

/// One JSON object per line: iteration, buyer, seller, price, units, notional.
void write_trace_jsonl(std::ostream& out, const DayTrace& trace);

std::string format_fixed3(double v);

}  // namespace fracmkt

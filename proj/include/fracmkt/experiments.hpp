#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fracmkt/market.hpp"
#include "fracmkt/metrics.hpp"
#include "fracmkt/model.hpp"

namespace fracmkt {

/// Runs fn(0) ... fn(n - 1) on up to `jobs` threads (0 = hardware concurrency).
/// The first exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

unsigned default_jobs();

struct BatchResult {
    AggregateMetrics aggregate;
    std::vector<DayMetrics> days;  // indexed by experiment
};

/// `reps` independent days on the same starting population. Experiment i is
/// seeded with derive_seed(master_seed, value_index, i), so output does not
/// depend on `jobs`.
BatchResult run_batch(const ModelParams& params, const Population& population, std::size_t reps,
                      std::uint64_t master_seed, unsigned jobs = 1, std::uint64_t value_index = 0);

/// Composite axes in addition to the ModelParams field names:
///   market_range_width  keeps the market midpoint, sets hi - lo to the value
///   market_midpoint     keeps the market width, moves its midpoint to the value
/// Both re-derive the seller ranges from the new market range.
inline constexpr std::string_view kAxisRangeWidth = "market_range_width";
inline constexpr std::string_view kAxisMidpoint = "market_midpoint";

/// `base` with `axis` set to `value`. Throws ConfigError naming the axis and
/// value when the axis is unknown or the result fails validation.
ModelParams apply_axis(const ModelParams& base, std::string_view axis, double value);

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
    std::size_t reps = 1000;
    ModelParams base_params;
    std::uint64_t master_seed = 0;
};

struct SweepRow {
    double value = 0.0;
    ModelParams params;
    AggregateMetrics metrics;
};

/// One batch per grid value (value index v seeds that batch), in the given order.
/// Every value is validated before any simulation runs.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Population& population, unsigned jobs = 1);

}  // namespace fracmkt

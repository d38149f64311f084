#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracmkt/agents.hpp"
#include "fracmkt/model.hpp"

namespace fracmkt {

/// Counters for one simulated trading day.
struct DayMetrics {
    std::int64_t n_offers = 0;
    std::int64_t n_trades = 0;
    std::int64_t offered_shares = 0;
    std::int64_t traded_shares = 0;
    Money traded_notional;
    Money platform_revenue;
    /// traded_shares / offered_shares; empty when nothing was offered.
    std::optional<double> liquidity_ratio;

    friend bool operator==(const DayMetrics&, const DayMetrics&) = default;
};

struct FillRecord {
    std::int64_t iteration = 0;  // 1-based trading iteration
    TradeFill fill;
    friend bool operator==(const FillRecord&, const FillRecord&) = default;
};

/// Audit record of one day: the book as built in pre-trading, every fill in
/// settlement order, and the cumulative metrics after each trading iteration.
struct DayTrace {
    std::vector<Offer> offers_entered;
    std::vector<FillRecord> fills;
    std::vector<DayMetrics> per_iteration_metrics;
    friend bool operator==(const DayTrace&, const DayTrace&) = default;
};

/// Incremental form of compute_day_metrics, used for per-iteration snapshots.
class MetricsAccumulator {
public:
    MetricsAccumulator() = default;
    explicit MetricsAccumulator(std::span<const Offer> initial_offers);

    void record_fill(const TradeFill& fill, Money fee);
    [[nodiscard]] DayMetrics snapshot() const;

private:
    DayMetrics m_;
};

DayMetrics compute_day_metrics(const DayTrace& trace, std::span<const Offer> initial_offers,
                               const ModelParams& params);

struct MetricStat {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation, 0 for a single value
    friend bool operator==(const MetricStat&, const MetricStat&) = default;
};

struct AggregateMetrics {
    std::size_t n_experiments = 0;
    /// Days whose ratio was undefined; excluded from liquidity_ratio.
    std::size_t n_undefined_ratio = 0;
    /// Mean of per-day ratios (not the ratio of mean totals). Empty if no day had one.
    std::optional<MetricStat> liquidity_ratio;
    MetricStat n_offers;
    MetricStat n_trades;
    MetricStat offered_shares;
    MetricStat traded_shares;
    MetricStat traded_notional;   // EUR
    MetricStat platform_revenue;  // EUR
    friend bool operator==(const AggregateMetrics&, const AggregateMetrics&) = default;
};

/// Per-field means and deviations. Values are sorted before summation, so the
/// result is bit-identical under any permutation of `days`.
/// Throws ContractViolation on an empty list.
AggregateMetrics aggregate(std::span<const DayMetrics> days);

}  // namespace fracmkt

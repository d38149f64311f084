#include "fracmkt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fracmkt/error.hpp"

namespace fracmkt {

namespace {

void finish_ratio(DayMetrics& m) {
    if (m.offered_shares > 0) {
        m.liquidity_ratio = static_cast<double>(m.traded_shares) / static_cast<double>(m.offered_shares);
    } else {
        m.liquidity_ratio.reset();
    }
}

MetricStat stat_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    MetricStat s;
    s.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / (n - 1.0));
    }
    return s;
}

MetricStat stat_over(std::span<const DayMetrics> days, const std::function<double(const DayMetrics&)>& get) {
    std::vector<double> values;
    values.reserve(days.size());
    for (const auto& d : days) values.push_back(get(d));
    return stat_of(std::move(values));
}

}  // namespace

MetricsAccumulator::MetricsAccumulator(std::span<const Offer> initial_offers) {
    m_.n_offers = static_cast<std::int64_t>(initial_offers.size());
    for (const Offer& o : initial_offers) m_.offered_shares += o.quantity;
    finish_ratio(m_);
}

void MetricsAccumulator::record_fill(const TradeFill& fill, Money fee) {
    ++m_.n_trades;
    m_.traded_shares += fill.units;
    m_.traded_notional += fill.notional;
    m_.platform_revenue += fee;
    finish_ratio(m_);
}

DayMetrics MetricsAccumulator::snapshot() const { return m_; }

DayMetrics compute_day_metrics(const DayTrace& trace, std::span<const Offer> initial_offers,
                               const ModelParams& params) {
    DayMetrics m;
    m.n_offers = static_cast<std::int64_t>(initial_offers.size());
    for (const Offer& o : initial_offers) m.offered_shares += o.quantity;
    m.n_trades = static_cast<std::int64_t>(trace.fills.size());
    for (const FillRecord& r : trace.fills) {
        m.traded_shares += r.fill.units;
        m.traded_notional += r.fill.notional;
        m.platform_revenue += exit_fee(r.fill.notional, params);
    }
    finish_ratio(m);
    return m;
}

AggregateMetrics aggregate(std::span<const DayMetrics> days) {
    if (days.empty()) throw ContractViolation("cannot aggregate an empty list of day metrics");

    AggregateMetrics a;
    a.n_experiments = days.size();

    std::vector<double> ratios;
    for (const auto& d : days) {
        if (d.liquidity_ratio) {
            ratios.push_back(*d.liquidity_ratio);
        } else {
            ++a.n_undefined_ratio;
        }
    }
    if (!ratios.empty()) a.liquidity_ratio = stat_of(std::move(ratios));

    auto count = [](std::int64_t DayMetrics::*field) {
        return [field](const DayMetrics& d) { return static_cast<double>(d.*field); };
    };
    a.n_offers = stat_over(days, count(&DayMetrics::n_offers));
    a.n_trades = stat_over(days, count(&DayMetrics::n_trades));
    a.offered_shares = stat_over(days, count(&DayMetrics::offered_shares));
    a.traded_shares = stat_over(days, count(&DayMetrics::traded_shares));
    a.traded_notional = stat_over(days, [](const DayMetrics& d) { return d.traded_notional.eur(); });
    a.platform_revenue = stat_over(days, [](const DayMetrics& d) { return d.platform_revenue.eur(); });
    return a;
}

}  // namespace fracmkt

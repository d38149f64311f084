#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracmkt/endowments.hpp"
#include "fracmkt/metrics.hpp"
#include "fracmkt/model.hpp"

namespace fracmkt {

/// Mean day metrics the generator is fitted to, with per-metric weights.
/// Defaults are the published baseline run.
struct CalibrationTargets {
    double liquidity_ratio = 0.139;
    double n_offers = 69.0;
    double n_trades = 130.0;
    double offered_shares = 4746.0;
    double traded_shares = 614.28;

    double w_liquidity_ratio = 1.0;
    double w_n_offers = 1.0;
    double w_n_trades = 1.0;
    double w_offered_shares = 1.0;
    double w_traded_shares = 1.0;

    /// Throws ConfigError for zero or non-finite targets or negative weights.
    void validate() const;
};

/// Weighted sum of squared relative errors of `achieved` against `targets`.
double calibration_objective(const AggregateMetrics& achieved, const CalibrationTargets& targets);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Search space. Each distribution family has its own parameter box; the
/// holder fractions and cash floor are shared.
struct CalibrationBox {
    Interval ps_holder_frac{0.3, 0.9};
    Interval bs_holder_frac{0.4, 1.0};
    std::vector<DistFamily> share_families{DistFamily::LogNormal, DistFamily::Pareto};
    Interval share_lognormal_mu{1.5, 5.5};
    Interval share_lognormal_sigma{0.3, 2.5};
    Interval share_pareto_scale{1.0, 60.0};
    Interval share_pareto_shape{0.6, 3.0};
    std::vector<DistFamily> cash_families{DistFamily::LogNormal, DistFamily::Pareto};
    Interval cash_lognormal_mu{0.0, 8.0};
    Interval cash_lognormal_sigma{0.3, 3.0};
    Interval cash_pareto_scale{1.0, 500.0};
    Interval cash_pareto_shape{0.3, 3.0};
    Interval cash_floor_eur{0.0, 100.0};
};

struct CalibrationOptions {
    std::size_t budget = 2000;  // profiles evaluated
    std::uint64_t seed = 0;
    std::size_t days_per_eval = 200;
    /// The budget is split evenly over rounds. Round 0 samples the whole box;
    /// round r samples a box around the incumbent whose half-widths are
    /// shrink^r of the full ones, with the incumbent's families fixed.
    std::size_t rounds = 4;
    double shrink = 0.5;
    unsigned jobs = 1;
    ModelParams params;
    EndowmentProfile counts;  // only n_pb, n_ps, n_bs are used
    CalibrationBox box;
};

struct CalibrationResult {
    EndowmentProfile profile;
    /// Seed of the population every candidate was evaluated on; regenerate
    /// with Rng(population_seed) to reproduce the fitted population exactly.
    std::uint64_t population_seed = 0;
    std::uint64_t eval_seed = 0;
    double objective = 0.0;
    AggregateMetrics achieved;
    std::size_t evaluations = 0;
};

/// Objective of one profile: population from Rng(population_seed), then
/// `days` runs seeded from eval_seed.
AggregateMetrics evaluate_profile(const EndowmentProfile& profile, const ModelParams& params, std::size_t days,
                                  std::uint64_t population_seed, std::uint64_t eval_seed, unsigned jobs = 1);

/// Random search for the profile minimizing calibration_objective. All
/// candidates share one population seed and one set of day seeds (common
/// random numbers). Deterministic given targets and options.
CalibrationResult calibrate_profile(const CalibrationTargets& targets, const CalibrationOptions& options);

}  // namespace fracmkt

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracmkt/metrics.hpp"
#include "fracmkt/model.hpp"
#include "fracmkt/offer_book.hpp"
#include "fracmkt/rng.hpp"

namespace fracmkt {

using Population = std::vector<AgentState>;

/// Throws ConfigError unless ids are dense (population[i].id == i) and balances non-negative.
void check_population(std::span<const AgentState> population);

/// Single pre-trading iteration: every seller-type agent is visited once in a
/// random order and may post one offer into a fresh book.
OfferBook run_pretrading(std::span<const AgentState> population, const ModelParams& params, Rng& rng);

/// Trading iterations. Each iteration visits all buyer-type agents in a fresh
/// random order; fills settle immediately, so later agents see the updated
/// book and balances.
DayTrace run_trading(std::span<AgentState> population, OfferBook& book, const ModelParams& params,
                     Rng& rng);

struct DayResult {
    DayTrace trace;
    DayMetrics metrics;
    Population final_population;
    /// Unmatched offers at the close; they are discarded, never carried over.
    std::size_t residual_offers = 0;
};

/// One trading day on a copy of `population`, driven by Rng(seed).
/// Throws ConfigError for invalid parameters or population before simulating.
DayResult run_day(Population population, const ModelParams& params, std::uint64_t seed);

}  // namespace fracmkt

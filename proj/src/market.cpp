#include "fracmkt/market.hpp"

#include <numeric>
#include <string>

#include "fracmkt/agents.hpp"
#include "fracmkt/error.hpp"

namespace fracmkt {

void check_population(std::span<const AgentState> population) {
    for (std::size_t i = 0; i < population.size(); ++i) {
        const AgentState& a = population[i];
        if (a.id.value != i) {
            throw ConfigError("agent at position " + std::to_string(i) + " has id " + std::to_string(a.id.value));
        }
        if (a.shares < 0 || a.cash.micros < 0) {
            throw ConfigError("agent " + std::to_string(i) + " has a negative balance");
        }
    }
}

OfferBook run_pretrading(std::span<const AgentState> population, const ModelParams& params, Rng& rng) {
    std::vector<std::size_t> sellers;
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (population[i].sells()) sellers.push_back(i);
    }
    rng.shuffle(std::span(sellers));

    OfferBook book;
    for (std::size_t i : sellers) {
        const AgentState& agent = population[i];
        auto offer = agent.kind == AgentKind::PureSeller ? ps_decide(agent, params, rng)
                                                         : bs_offer_decide(agent, params, rng);
        if (offer) book.insert(*offer);
    }
    return book;
}

DayTrace run_trading(std::span<AgentState> population, OfferBook& book, const ModelParams& params,
                     Rng& rng) {
    DayTrace trace;
    trace.offers_entered.assign(book.offers().begin(), book.offers().end());
    MetricsAccumulator acc(trace.offers_entered);

    std::vector<std::size_t> buyers;
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (population[i].buys()) buyers.push_back(i);
    }

    for (std::int64_t step = 1; step <= params.n_trading_iters; ++step) {
        rng.shuffle(std::span(buyers));
        for (std::size_t i : buyers) {
            AgentState& agent = population[i];
            auto fill = agent.kind == AgentKind::PureBuyer ? pb_decide(agent, book, params, rng)
                                                           : bs_buy_decide(agent, book, params, rng);
            if (!fill) continue;
            AgentState& seller = population[fill->seller.value];
            const Money fee = settle_fill(*fill, agent, seller, book, params);
            acc.record_fill(*fill, fee);
            trace.fills.push_back(FillRecord{step, *fill});
        }
        trace.per_iteration_metrics.push_back(acc.snapshot());
    }
    return trace;
}

DayResult run_day(Population population, const ModelParams& params, std::uint64_t seed) {
    params.validate();
    check_population(population);

    Rng rng(seed);
    OfferBook book = run_pretrading(population, params, rng);
    DayResult result;
    result.trace = run_trading(population, book, params, rng);
    result.metrics = compute_day_metrics(result.trace, result.trace.offers_entered, params);
    result.residual_offers = book.size();
    result.final_population = std::move(population);
    return result;
}

}  // namespace fracmkt

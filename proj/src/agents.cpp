#include "fracmkt/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracmkt/error.hpp"

namespace fracmkt {

Money draw_offer_price(double lo_rel, double hi_rel, double p_ref, Rng& rng) {
    const double lo = lo_rel * p_ref;
    const double hi = hi_rel * p_ref;
    const double raw = rng.uniform(lo, hi);
    const std::int64_t lo_m = Money::from_eur(lo).micros;
    const std::int64_t hi_m = std::max(lo_m, Money::from_eur(hi).micros - 1);
    return Money::from_micros(std::clamp(Money::from_eur(raw).micros, lo_m, hi_m));
}

std::optional<TradeFill> size_fill(AgentId buyer, Money budget, const Offer& offer) {
    std::int64_t units = offer.quantity;
    if (budget < offer.price * offer.quantity) {
        units = budget.micros / offer.price.micros;
        if (units <= 0) return std::nullopt;
    }
    return TradeFill{buyer, offer.seller, offer.price, units, offer.price * units, budget};
}

namespace {

std::optional<Offer> offer_from_holdings(const AgentState& agent, double prob, double ratio,
                                         double lo_rel, double hi_rel, double p_ref, Rng& rng) {
    // The activation draw is always consumed so stream position does not depend on holdings.
    const bool active = rng.bernoulli(prob);
    if (!active || agent.shares <= 0) return std::nullopt;
    const auto quantity =
        static_cast<std::int64_t>(std::floor(ratio * static_cast<double>(agent.shares)));
    if (quantity <= 0) return std::nullopt;
    const Money price = draw_offer_price(lo_rel, hi_rel, p_ref, rng);
    return Offer{price, quantity, agent.id, 0};
}

}  // namespace

std::optional<Offer> ps_decide(const AgentState& agent, const ModelParams& params, Rng& rng) {
    return offer_from_holdings(agent, params.ps_offer_prob, params.ps_offer_ratio, params.ps_price_lo,
                               params.ps_price_hi, params.p_ref, rng);
}

std::optional<Offer> bs_offer_decide(const AgentState& agent, const ModelParams& params, Rng& rng) {
    return offer_from_holdings(agent, params.bs_offer_prob, params.bs_offer_ratio, params.bs_price_lo,
                               params.bs_price_hi, params.p_ref, rng);
}

double pb_accept_prob(double price_eur, const ModelParams& params) {
    const double arg = std::clamp(params.k_pb * (price_eur - params.p_ref), -kSigmoidClamp, kSigmoidClamp);
    return 1.0 / (1.0 + std::exp(arg));
}

std::optional<TradeFill> pb_decide(const AgentState& agent, const OfferBook& book,
                                   const ModelParams& params, Rng& rng) {
    if (!rng.bernoulli(params.pb_trade_prob) || book.empty()) return std::nullopt;
    const Offer& offer = book.at(static_cast<std::size_t>(rng.index(book.size())));
    if (!rng.bernoulli(pb_accept_prob(offer.price.eur(), params))) return std::nullopt;
    return size_fill(agent.id, scale(agent.cash, params.pb_purchase_ratio), offer);
}

std::optional<TradeFill> bs_buy_decide(const AgentState& agent, const OfferBook& book,
                                       const ModelParams& params, Rng& rng) {
    if (!rng.bernoulli(params.bs_trade_prob)) return std::nullopt;

    const Money p_ref = params.reference_price();
    std::vector<const Offer*> candidates;
    candidates.reserve(book.size());
    for (const Offer& o : book.offers()) {
        if (o.price < p_ref && o.seller != agent.id) candidates.push_back(&o);
    }
    if (candidates.empty()) return std::nullopt;

    const auto picks = rng.sample_without_replacement(candidates.size(),
                                                      static_cast<std::size_t>(params.bs_search_len));
    const Offer* best = nullptr;
    for (std::size_t i : picks) {
        const Offer* o = candidates[i];
        if (best == nullptr || o->price < best->price ||
            (o->price == best->price && o->entry_order < best->entry_order)) {
            best = o;
        }
    }
    return size_fill(agent.id, scale(agent.cash, params.bs_purchase_ratio), *best);
}

Money exit_fee(Money notional, const ModelParams& params) {
    return Money::from_micros(std::llround(params.exit_fee_rate * static_cast<double>(notional.micros)));
}

Money settle_fill(const TradeFill& fill, AgentState& buyer, AgentState& seller, OfferBook& book,
                  const ModelParams& params) {
    auto fail = [](const std::string& what) { throw ContractViolation("inconsistent fill: " + what); };
    if (buyer.id != fill.buyer || seller.id != fill.seller) fail("agent ids do not match");
    if (buyer.id == seller.id) fail("self-trade");
    if (!buyer.buys() || !seller.sells()) fail("agent kinds cannot take these sides");
    const Offer* offer = book.find(fill.seller);
    if (offer == nullptr) fail("seller has no live offer");
    if (offer->price != fill.price) fail("price differs from live offer");
    if (fill.units < 1 || fill.units > offer->quantity) fail("units outside [1, offer quantity]");
    if (fill.notional != fill.price * fill.units) fail("notional is not price * units");
    if (fill.notional > fill.purchase_budget) fail("notional exceeds purchase budget");
    if (fill.notional > buyer.cash) fail("buyer cannot pay");
    if (fill.units > seller.shares) fail("seller does not hold the units");

    const Money fee = exit_fee(fill.notional, params);
    buyer.shares += fill.units;
    buyer.cash -= fill.notional;
    seller.shares -= fill.units;
    seller.cash += params.debit_exit_fee ? fill.notional - fee : fill.notional;
    book.apply_fill(fill.seller, fill.units);
    return fee;
}

}  // namespace fracmkt

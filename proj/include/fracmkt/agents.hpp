#pragma once

#include <cstdint>
#include <optional>

#include "fracmkt/model.hpp"
#include "fracmkt/offer_book.hpp"
#include "fracmkt/rng.hpp"

namespace fracmkt {

/// A matched purchase before settlement.
struct TradeFill {
    AgentId buyer;
    AgentId seller;
    Money price;          // per unit
    std::int64_t units = 0;
    Money notional;       // price * units
    Money purchase_budget;  // the buyer's spendable amount for this decision
    friend bool operator==(const TradeFill&, const TradeFill&) = default;
};

/// Exponent arguments of the acceptance sigmoid are clamped to +-kSigmoidClamp.
inline constexpr double kSigmoidClamp = 500.0;

/// Uniform price in [lo_rel * p_ref, hi_rel * p_ref), quantized to whole micro-euros.
/// A zero-width range returns its single point.
Money draw_offer_price(double lo_rel, double hi_rel, double p_ref, Rng& rng);

/// Purchase quantity for a buyer with `budget` facing `offer`: the whole offer if
/// affordable, otherwise as many whole units as the budget covers. Empty when
/// not even one unit is affordable.
std::optional<TradeFill> size_fill(AgentId buyer, Money budget, const Offer& offer);

// Pre-trading: pure sellers list a fixed share of their holdings after a liquidity shock.
std::optional<Offer> ps_decide(const AgentState& agent, const ModelParams& params, Rng& rng);

/// Probability that a pure buyer accepts an offer priced at `price_eur`:
/// 1 / (1 + exp(k * (price - p_ref))).
double pb_accept_prob(double price_eur, const ModelParams& params);

// Trading: a pure buyer views one random offer and accepts it with pb_accept_prob.
std::optional<TradeFill> pb_decide(const AgentState& agent, const OfferBook& book,
                                   const ModelParams& params, Rng& rng);

std::optional<Offer> bs_offer_decide(const AgentState& agent, const ModelParams& params, Rng& rng);

/// Trading branch of the buyer-seller: among other sellers' offers priced below
/// p_ref, sample up to bs_search_len without replacement and take the cheapest
/// (earliest entry wins ties).
std::optional<TradeFill> bs_buy_decide(const AgentState& agent, const OfferBook& book,
                                       const ModelParams& params, Rng& rng);

/// Applies `fill` to both agents and the book. Returns the exit fee on the
/// notional, which is reported as platform revenue whether or not it is
/// debited from the seller (see ModelParams::debit_exit_fee).
/// Throws ContractViolation if the fill does not match the live offer or the agents.
Money settle_fill(const TradeFill& fill, AgentState& buyer, AgentState& seller, OfferBook& book,
                  const ModelParams& params);

/// Exit fee charged on `notional`, rounded to the nearest micro-euro.
Money exit_fee(Money notional, const ModelParams& params);

}  // namespace fracmkt

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fracmkt/money.hpp"

namespace fracmkt {

/// Dense agent index; equals the agent's position in its population.
struct AgentId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

enum class AgentKind : std::uint8_t { PureSeller, PureBuyer, BuyerSeller };

/// Short label used in endowment files: PS, PB or BS.
std::string_view kind_label(AgentKind kind);
std::optional<AgentKind> parse_kind(std::string_view label);

struct AgentState {
    AgentId id;
    AgentKind kind = AgentKind::PureBuyer;
    std::int64_t shares = 0;
    Money cash;

    [[nodiscard]] bool sells() const { return kind != AgentKind::PureBuyer; }
    [[nodiscard]] bool buys() const { return kind != AgentKind::PureSeller; }
    friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// A priced sell listing. `entry_order` is assigned by the book on insert.
struct Offer {
    Money price;
    std::int64_t quantity = 0;
    AgentId seller;
    std::uint64_t entry_order = 0;
    friend bool operator==(const Offer&, const Offer&) = default;
};

/// Model parameters. Defaults are the baseline calibration of the platform
/// (market range [0.75, 1.10], sellers' ranges derived from it).
struct ModelParams {
    double p_ref = 50.0;
    double k_pb = 2.0;

    double ps_offer_prob = 0.114;
    double ps_offer_ratio = 0.603;
    double ps_price_lo = 0.75;
    double ps_price_hi = 1.05;

    double pb_trade_prob = 0.092;
    double pb_purchase_ratio = 0.566;

    double bs_offer_prob = 0.278;
    double bs_offer_ratio = 0.333;
    double bs_price_lo = 0.80;
    double bs_price_hi = 1.10;
    double bs_trade_prob = 0.104;
    double bs_purchase_ratio = 0.485;
    std::int64_t bs_search_len = 5;

    double market_lo = 0.75;
    double market_hi = 1.10;
    std::int64_t n_trading_iters = 12;

    double exit_fee_rate = 0.02;
    bool debit_exit_fee = false;

    /// Gap between the market bounds and the sellers' inner bounds.
    static constexpr double kSellerRangeOffset = 0.05;

    /// Sets the market range and derives PS = [lo, hi - 0.05], BS = [lo + 0.05, hi].
    void set_market_range(double lo, double hi);

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    [[nodiscard]] Money reference_price() const { return Money::from_eur(p_ref); }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

}  // namespace fracmkt

namespace fracmkt {

/// Every ModelParams field, by its field name. Used by sweeps and config files.
std::span<const std::string_view> param_names();

/// Sets a field by name. Integer and boolean fields require integral (0/1) values.
/// Throws ConfigError for an unknown name or an unrepresentable value.
void set_param(ModelParams& params, std::string_view name, double value);
double get_param(const ModelParams& params, std::string_view name);

}  // namespace fracmkt

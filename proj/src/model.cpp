#include "fracmkt/model.hpp"

#include <array>
#include <cmath>

#include "fracmkt/error.hpp"

namespace fracmkt {

std::string_view kind_label(AgentKind kind) {
    switch (kind) {
        case AgentKind::PureSeller: return "PS";
        case AgentKind::PureBuyer: return "PB";
        case AgentKind::BuyerSeller: return "BS";
    }
    return "?";
}

std::optional<AgentKind> parse_kind(std::string_view label) {
    if (label == "PS") return AgentKind::PureSeller;
    if (label == "PB") return AgentKind::PureBuyer;
    if (label == "BS") return AgentKind::BuyerSeller;
    return std::nullopt;
}

void ModelParams::set_market_range(double lo, double hi) {
    market_lo = lo;
    market_hi = hi;
    ps_price_lo = lo;
    ps_price_hi = hi - kSellerRangeOffset;
    bs_price_lo = lo + kSellerRangeOffset;
    bs_price_hi = hi;
}

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw ConfigError(std::string("invalid parameter ") + field + ": " + what);
}

void check_unit(double v, const char* field) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, field, "must lie in [0, 1]");
}

// Zero-width ranges are allowed: they make every drawn price deterministic.
void check_range(double lo, double hi, const char* field) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0, field, "bounds must be finite and positive");
    require(lo <= hi, field, "lower bound exceeds upper bound");
}

}  // namespace

void ModelParams::validate() const {
    require(std::isfinite(p_ref) && p_ref > 0.0, "p_ref", "must be positive");
    require(std::isfinite(k_pb), "k_pb", "must be finite");
    check_unit(ps_offer_prob, "ps_offer_prob");
    check_unit(ps_offer_ratio, "ps_offer_ratio");
    check_unit(pb_trade_prob, "pb_trade_prob");
    check_unit(pb_purchase_ratio, "pb_purchase_ratio");
    check_unit(bs_offer_prob, "bs_offer_prob");
    check_unit(bs_offer_ratio, "bs_offer_ratio");
    check_unit(bs_trade_prob, "bs_trade_prob");
    check_unit(bs_purchase_ratio, "bs_purchase_ratio");
    check_unit(exit_fee_rate, "exit_fee_rate");
    check_range(ps_price_lo, ps_price_hi, "ps_price");
    check_range(bs_price_lo, bs_price_hi, "bs_price");
    check_range(market_lo, market_hi, "market");
    require(bs_search_len >= 1, "bs_search_len", "must be a positive integer");
    require(n_trading_iters >= 0, "n_trading_iters", "must be non-negative");
}

}  // namespace fracmkt

namespace fracmkt {

namespace {

enum class FieldType { Real, Integer, Boolean };

struct Field {
    std::string_view name;
    FieldType type;
    double ModelParams::*real = nullptr;
    std::int64_t ModelParams::*integer = nullptr;
    bool ModelParams::*boolean = nullptr;
};

constexpr Field real(std::string_view n, double ModelParams::*p) { return {n, FieldType::Real, p, nullptr, nullptr}; }
constexpr Field integer(std::string_view n, std::int64_t ModelParams::*p) {
    return {n, FieldType::Integer, nullptr, p, nullptr};
}
constexpr Field boolean(std::string_view n, bool ModelParams::*p) { return {n, FieldType::Boolean, nullptr, nullptr, p}; }

constexpr std::array kFields{
    real("p_ref", &ModelParams::p_ref),
    real("k_pb", &ModelParams::k_pb),
    real("ps_offer_prob", &ModelParams::ps_offer_prob),
    real("ps_offer_ratio", &ModelParams::ps_offer_ratio),
    real("ps_price_lo", &ModelParams::ps_price_lo),
    real("ps_price_hi", &ModelParams::ps_price_hi),
    real("pb_trade_prob", &ModelParams::pb_trade_prob),
    real("pb_purchase_ratio", &ModelParams::pb_purchase_ratio),
    real("bs_offer_prob", &ModelParams::bs_offer_prob),
    real("bs_offer_ratio", &ModelParams::bs_offer_ratio),
    real("bs_price_lo", &ModelParams::bs_price_lo),
    real("bs_price_hi", &ModelParams::bs_price_hi),
    real("bs_trade_prob", &ModelParams::bs_trade_prob),
    real("bs_purchase_ratio", &ModelParams::bs_purchase_ratio),
    integer("bs_search_len", &ModelParams::bs_search_len),
    real("market_lo", &ModelParams::market_lo),
    real("market_hi", &ModelParams::market_hi),
    integer("n_trading_iters", &ModelParams::n_trading_iters),
    real("exit_fee_rate", &ModelParams::exit_fee_rate),
    boolean("debit_exit_fee", &ModelParams::debit_exit_fee),
};

constexpr auto kNames = [] {
    std::array<std::string_view, kFields.size()> names{};
    for (std::size_t i = 0; i < kFields.size(); ++i) names[i] = kFields[i].name;
    return names;
}();

const Field& field(std::string_view name) {
    for (const Field& f : kFields) {
        if (f.name == name) return f;
    }
    throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

}  // namespace

std::span<const std::string_view> param_names() { return kNames; }

void set_param(ModelParams& params, std::string_view name, double value) {
    const Field& f = field(name);
    switch (f.type) {
        case FieldType::Real:
            params.*f.real = value;
            return;
        case FieldType::Integer:
            if (!std::isfinite(value) || std::trunc(value) != value) {
                throw ConfigError("parameter " + std::string(name) + " requires an integer value");
            }
            params.*f.integer = static_cast<std::int64_t>(value);
            return;
        case FieldType::Boolean:
            if (value != 0.0 && value != 1.0) {
                throw ConfigError("parameter " + std::string(name) + " requires 0 or 1");
            }
            params.*f.boolean = value == 1.0;
            return;
    }
}

double get_param(const ModelParams& params, std::string_view name) {
    const Field& f = field(name);
    switch (f.type) {
        case FieldType::Real: return params.*f.real;
        case FieldType::Integer: return static_cast<double>(params.*f.integer);
        case FieldType::Boolean: return params.*f.boolean ? 1.0 : 0.0;
    }
    return 0.0;
}

}  // namespace fracmkt

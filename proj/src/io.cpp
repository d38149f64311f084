#include "fracmkt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "fracmkt/error.hpp"

namespace fracmkt {

extern const char* const kDefaultProfileJson;

namespace {

double number_at(const Json& j, std::string_view key) {
    if (!j.is_number()) throw ConfigError("'" + std::string(key) + "' must be a number");
    return j.get<double>();
}

std::uint64_t u64_at(const Json& j, std::string_view key) {
    if (!j.is_number_unsigned()) throw ConfigError("'" + std::string(key) + "' must be a non-negative integer");
    return j.get<std::uint64_t>();
}

std::int64_t count_at(const Json& j, std::string_view key) {
    if (!j.is_number_integer()) throw ConfigError("'" + std::string(key) + "' must be an integer");
    return j.get<std::int64_t>();
}

void expect_object(const Json& j, std::string_view what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw LoadError(path.string() + ": " + e.what());
    }
}

Json stat_json(const MetricStat& s) { return Json{{"mean", s.mean}, {"std", s.stddev}}; }

}  // namespace

std::string format_fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

Json params_to_json(const ModelParams& params) {
    Json j = Json::object();
    for (std::string_view name : param_names()) {
        const double v = get_param(params, name);
        if (name == "debit_exit_fee") {
            j[std::string(name)] = v == 1.0;
        } else if (name == "bs_search_len" || name == "n_trading_iters") {
            j[std::string(name)] = static_cast<std::int64_t>(v);
        } else {
            j[std::string(name)] = v;
        }
    }
    return j;
}

ModelParams params_from_json(const Json& j, const ModelParams& base) {
    expect_object(j, "params");
    ModelParams p = base;
    // Setting the market range first lets explicit seller ranges override the derived ones.
    if (j.contains("market_range")) {
        const Json& r = j.at("market_range");
        if (!r.is_array() || r.size() != 2) throw ConfigError("'market_range' must be [lo, hi]");
        p.set_market_range(number_at(r[0], "market_range"), number_at(r[1], "market_range"));
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "market_range") continue;
        if (value.is_boolean()) {
            set_param(p, key, value.get<bool>() ? 1.0 : 0.0);
        } else {
            set_param(p, key, number_at(value, key));
        }
    }
    return p;
}

Json dist_to_json(const DistSpec& d) {
    Json j{{"family", family_name(d.family)}};
    switch (d.family) {
        case DistFamily::Constant: j["value"] = d.a; break;
        case DistFamily::UniformInt: j["lo"] = d.a; j["hi"] = d.b; break;
        case DistFamily::LogNormal: j["mu"] = d.a; j["sigma"] = d.b; break;
        case DistFamily::Pareto: j["scale"] = d.a; j["shape"] = d.b; break;
    }
    return j;
}

DistSpec dist_from_json(const Json& j, std::string_view field) {
    expect_object(j, field);
    if (!j.contains("family") || !j.at("family").is_string()) {
        throw ConfigError(std::string(field) + ": missing 'family'");
    }
    const auto family = parse_family(j.at("family").get<std::string>());
    if (!family) throw ConfigError(std::string(field) + ": unknown family '" + j.at("family").get<std::string>() + "'");
    auto param = [&](const char* key) {
        if (!j.contains(key)) throw ConfigError(std::string(field) + ": missing '" + key + "'");
        return number_at(j.at(key), key);
    };
    DistSpec d{*family, 0.0, 0.0};
    switch (*family) {
        case DistFamily::Constant: d.a = param("value"); break;
        case DistFamily::UniformInt: d.a = param("lo"); d.b = param("hi"); break;
        case DistFamily::LogNormal: d.a = param("mu"); d.b = param("sigma"); break;
        case DistFamily::Pareto: d.a = param("scale"); d.b = param("shape"); break;
    }
    d.validate(field);
    return d;
}

Json profile_to_json(const ProfileDocument& doc) {
    const EndowmentProfile& p = doc.profile;
    Json j{
        {"n_pb", p.n_pb},
        {"n_ps", p.n_ps},
        {"n_bs", p.n_bs},
        {"ps_holder_frac", p.ps_holder_frac},
        {"bs_holder_frac", p.bs_holder_frac},
        {"share_dist", dist_to_json(p.share_dist)},
        {"cash_dist_pb", dist_to_json(p.cash_dist_pb)},
        {"cash_dist_bs", dist_to_json(p.cash_dist_bs)},
        {"cash_floor", p.cash_floor.eur()},
        {"population_seed", doc.population_seed},
    };
    if (!doc.calibration.is_null()) j["calibration"] = doc.calibration;
    return j;
}

ProfileDocument profile_from_json(const Json& j) {
    expect_object(j, "profile");
    static constexpr std::array kKeys{"n_pb", "n_ps", "n_bs", "ps_holder_frac", "bs_holder_frac", "share_dist",
                                      "cash_dist_pb", "cash_dist_bs", "cash_floor", "population_seed", "calibration"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError("unknown profile field '" + key + "'");
        }
    }
    ProfileDocument doc;
    EndowmentProfile& p = doc.profile;
    if (j.contains("n_pb")) p.n_pb = count_at(j.at("n_pb"), "n_pb");
    if (j.contains("n_ps")) p.n_ps = count_at(j.at("n_ps"), "n_ps");
    if (j.contains("n_bs")) p.n_bs = count_at(j.at("n_bs"), "n_bs");
    if (j.contains("ps_holder_frac")) p.ps_holder_frac = number_at(j.at("ps_holder_frac"), "ps_holder_frac");
    if (j.contains("bs_holder_frac")) p.bs_holder_frac = number_at(j.at("bs_holder_frac"), "bs_holder_frac");
    if (j.contains("share_dist")) p.share_dist = dist_from_json(j.at("share_dist"), "share_dist");
    if (j.contains("cash_dist_pb")) p.cash_dist_pb = dist_from_json(j.at("cash_dist_pb"), "cash_dist_pb");
    if (j.contains("cash_dist_bs")) p.cash_dist_bs = dist_from_json(j.at("cash_dist_bs"), "cash_dist_bs");
    if (j.contains("cash_floor")) p.cash_floor = Money::from_eur(number_at(j.at("cash_floor"), "cash_floor"));
    if (j.contains("population_seed")) doc.population_seed = u64_at(j.at("population_seed"), "population_seed");
    if (j.contains("calibration")) doc.calibration = j.at("calibration");
    p.validate();
    return doc;
}

ProfileDocument load_profile(const std::filesystem::path& path) {
    const Json j = read_json_file(path);
    try {
        return profile_from_json(j);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void save_profile(const std::filesystem::path& path, const ProfileDocument& doc) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write profile " + path.string());
    out << profile_to_json(doc).dump(2) << '\n';
}

const ProfileDocument& default_profile() {
    static const ProfileDocument doc = profile_from_json(Json::parse(kDefaultProfileJson));
    return doc;
}

const Population& default_population() {
    static const Population pop = [] {
        Rng rng(default_profile().population_seed);
        return generate_population(default_profile().profile, rng);
    }();
    return pop;
}

CalibrationTargets targets_from_json(const Json& j) {
    expect_object(j, "targets");
    CalibrationTargets t;
    for (const auto& [key, value] : j.items()) {
        const double v = number_at(value, key);
        if (key == "liquidity_ratio") t.liquidity_ratio = v;
        else if (key == "n_offers") t.n_offers = v;
        else if (key == "n_trades") t.n_trades = v;
        else if (key == "offered_shares") t.offered_shares = v;
        else if (key == "traded_shares") t.traded_shares = v;
        else if (key == "w_liquidity_ratio") t.w_liquidity_ratio = v;
        else if (key == "w_n_offers") t.w_n_offers = v;
        else if (key == "w_n_trades") t.w_n_trades = v;
        else if (key == "w_offered_shares") t.w_offered_shares = v;
        else if (key == "w_traded_shares") t.w_traded_shares = v;
        else throw ConfigError("unknown calibration target '" + key + "'");
    }
    t.validate();
    return t;
}

Json targets_to_json(const CalibrationTargets& t) {
    return Json{{"liquidity_ratio", t.liquidity_ratio}, {"n_offers", t.n_offers},
                {"n_trades", t.n_trades},               {"offered_shares", t.offered_shares},
                {"traded_shares", t.traded_shares},     {"w_liquidity_ratio", t.w_liquidity_ratio},
                {"w_n_offers", t.w_n_offers},           {"w_n_trades", t.w_n_trades},
                {"w_offered_shares", t.w_offered_shares}, {"w_traded_shares", t.w_traded_shares}};
}

Json day_metrics_to_json(const DayMetrics& m) {
    Json j{
        {"liquidity_ratio", nullptr},
        {"n_offers", m.n_offers},
        {"n_trades", m.n_trades},
        {"offered_shares", m.offered_shares},
        {"traded_shares", m.traded_shares},
        {"traded_notional", m.traded_notional.eur()},
        {"platform_revenue", m.platform_revenue.eur()},
    };
    if (m.liquidity_ratio) j["liquidity_ratio"] = *m.liquidity_ratio;
    return j;
}

Json aggregate_to_json(const AggregateMetrics& a) {
    Json j{
        {"liquidity_ratio", nullptr},
        {"n_offers", stat_json(a.n_offers)},
        {"n_trades", stat_json(a.n_trades)},
        {"offered_shares", stat_json(a.offered_shares)},
        {"traded_shares", stat_json(a.traded_shares)},
        {"traded_notional", stat_json(a.traded_notional)},
        {"platform_revenue", stat_json(a.platform_revenue)},
        {"n_experiments", a.n_experiments},
        {"n_undefined_ratio", a.n_undefined_ratio},
    };
    if (a.liquidity_ratio) j["liquidity_ratio"] = stat_json(*a.liquidity_ratio);
    return j;
}

std::span<const std::string_view> table_columns() {
    static constexpr std::array<std::string_view, 5> kColumns{"liquidity_ratio", "n_offers", "n_trades",
                                                              "offered_shares", "traded_shares"};
    return kColumns;
}

namespace {

std::string ratio_cell(const std::optional<double>& r) { return r ? format_fixed3(*r) : "NA"; }

void write_header(std::ostream& out, std::string_view first, bool money) {
    bool sep = false;
    if (!first.empty()) {
        out << first;
        sep = true;
    }
    for (std::string_view c : table_columns()) {
        if (sep) out << ',';
        out << c;
        sep = true;
    }
    if (money) out << ",traded_notional,platform_revenue";
}

}  // namespace

void write_day_metrics_csv(std::ostream& out, const DayMetrics& m) {
    write_header(out, "", true);
    out << '\n'
        << ratio_cell(m.liquidity_ratio) << ',' << format_fixed3(static_cast<double>(m.n_offers)) << ','
        << format_fixed3(static_cast<double>(m.n_trades)) << ','
        << format_fixed3(static_cast<double>(m.offered_shares)) << ','
        << format_fixed3(static_cast<double>(m.traded_shares)) << ',' << format_fixed3(m.traded_notional.eur())
        << ',' << format_fixed3(m.platform_revenue.eur()) << '\n';
}

void write_aggregate_csv(std::ostream& out, const AggregateMetrics& a) {
    write_header(out, "", true);
    out << ",n_experiments\n"
        << (a.liquidity_ratio ? format_fixed3(a.liquidity_ratio->mean) : "NA") << ','
        << format_fixed3(a.n_offers.mean) << ',' << format_fixed3(a.n_trades.mean) << ','
        << format_fixed3(a.offered_shares.mean) << ',' << format_fixed3(a.traded_shares.mean) << ','
        << format_fixed3(a.traded_notional.mean) << ',' << format_fixed3(a.platform_revenue.mean) << ','
        << a.n_experiments << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    write_header(out, "value", false);
    out << '\n';
    for (const SweepRow& r : rows) {
        const AggregateMetrics& a = r.metrics;
        out << format_fixed3(r.value) << ',' << (a.liquidity_ratio ? format_fixed3(a.liquidity_ratio->mean) : "NA")
            << ',' << format_fixed3(a.n_offers.mean) << ',' << format_fixed3(a.n_trades.mean) << ','
            << format_fixed3(a.offered_shares.mean) << ',' << format_fixed3(a.traded_shares.mean) << '\n';
    }
}

Json sweep_to_json(std::string_view parameter, std::span<const SweepRow> rows) {
    Json out{{"parameter", parameter}, {"rows", Json::array()}};
    for (const SweepRow& r : rows) {
        Json row = aggregate_to_json(r.metrics);
        row["value"] = r.value;
        out["rows"].push_back(std::move(row));
    }
    return out;
}

void write_trace_jsonl(std::ostream& out, const DayTrace& trace) {
    for (const FillRecord& r : trace.fills) {
        const Json line{{"iteration", r.iteration},       {"buyer", r.fill.buyer.value},
                        {"seller", r.fill.seller.value},  {"price", r.fill.price.eur()},
                        {"units", r.fill.units},          {"notional", r.fill.notional.eur()}};
        out << line.dump() << '\n';
    }
}

}  // namespace fracmkt

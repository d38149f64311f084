#include "fracmkt/endowments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "fracmkt/error.hpp"

namespace fracmkt {

namespace {

constexpr double kMaxShares = 1e9;
constexpr double kMaxCashEur = 1e9;

}  // namespace

std::string_view family_name(DistFamily family) {
    switch (family) {
        case DistFamily::Constant: return "constant";
        case DistFamily::UniformInt: return "uniform_int";
        case DistFamily::LogNormal: return "lognormal";
        case DistFamily::Pareto: return "pareto";
    }
    return "?";
}

std::optional<DistFamily> parse_family(std::string_view name) {
    for (auto f : {DistFamily::Constant, DistFamily::UniformInt, DistFamily::LogNormal, DistFamily::Pareto}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

double DistSpec::sample(Rng& rng) const {
    switch (family) {
        case DistFamily::Constant:
            return a;
        case DistFamily::UniformInt: {
            const auto lo = static_cast<std::int64_t>(std::ceil(a));
            const auto hi = static_cast<std::int64_t>(std::floor(b));
            return static_cast<double>(lo + static_cast<std::int64_t>(rng.index(static_cast<std::uint64_t>(hi - lo + 1))));
        }
        case DistFamily::LogNormal:
            return std::exp(a + b * rng.normal());
        case DistFamily::Pareto:
            return a * std::pow(1.0 - rng.uniform01(), -1.0 / b);
    }
    return 0.0;
}

void DistSpec::validate(std::string_view field) const {
    auto fail = [&](const char* what) {
        throw ConfigError(std::string(field) + " (" + std::string(family_name(family)) + "): " + what);
    };
    if (!std::isfinite(a) || !std::isfinite(b)) fail("parameters must be finite");
    switch (family) {
        case DistFamily::Constant:
            if (a < 0.0) fail("value must be non-negative");
            break;
        case DistFamily::UniformInt:
            if (a < 0.0 || std::ceil(a) > std::floor(b)) fail("needs 0 <= lo <= hi with an integer in between");
            break;
        case DistFamily::LogNormal:
            if (b < 0.0) fail("sigma must be non-negative");
            break;
        case DistFamily::Pareto:
            if (a <= 0.0 || b <= 0.0) fail("scale and shape must be positive");
            break;
    }
}

void EndowmentProfile::validate() const {
    if (n_pb < 0 || n_ps < 0 || n_bs < 0) throw ConfigError("agent counts must be non-negative");
    auto frac = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
    };
    frac(ps_holder_frac, "ps_holder_frac");
    frac(bs_holder_frac, "bs_holder_frac");
    share_dist.validate("share_dist");
    cash_dist_pb.validate("cash_dist_pb");
    cash_dist_bs.validate("cash_dist_bs");
    if (cash_floor.micros < 0) throw ConfigError("cash_floor must be non-negative");
}

Population generate_population(const EndowmentProfile& profile, Rng& rng) {
    profile.validate();

    auto draw_shares = [&]() -> std::int64_t {
        const double x = std::clamp(profile.share_dist.sample(rng), 1.0, kMaxShares);
        return std::max<std::int64_t>(1, std::llround(x));
    };
    auto draw_cash = [&](const DistSpec& dist) {
        const double x = std::clamp(dist.sample(rng), 0.0, kMaxCashEur);
        const Money cents = Money::from_micros(std::llround(x * 100.0) * (Money::kMicrosPerUnit / 100));
        return std::max(cents, profile.cash_floor);
    };

    Population pop;
    pop.reserve(static_cast<std::size_t>(profile.n_pb + profile.n_ps + profile.n_bs));
    auto add = [&](AgentKind kind, std::int64_t shares, Money cash) {
        pop.push_back(AgentState{AgentId{static_cast<std::uint32_t>(pop.size())}, kind, shares, cash});
    };
    for (std::int64_t i = 0; i < profile.n_pb; ++i) {
        add(AgentKind::PureBuyer, 0, draw_cash(profile.cash_dist_pb));
    }
    for (std::int64_t i = 0; i < profile.n_ps; ++i) {
        const bool holder = rng.bernoulli(profile.ps_holder_frac);
        add(AgentKind::PureSeller, holder ? draw_shares() : 0, Money{});
    }
    for (std::int64_t i = 0; i < profile.n_bs; ++i) {
        const bool holder = rng.bernoulli(profile.bs_holder_frac);
        const std::int64_t shares = holder ? draw_shares() : 0;
        add(AgentKind::BuyerSeller, shares, draw_cash(profile.cash_dist_bs));
    }
    return pop;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// Cash as a plain decimal with at most six fractional digits, parsed exactly.
std::optional<Money> parse_cash(std::string_view s) {
    const auto digits = [](std::string_view d) {
        return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    const auto dot = s.find('.');
    const std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (frac.size() > 6 || !digits(whole) || !digits(frac)) return std::nullopt;
    std::int64_t w = 0;
    if (!whole.empty()) {
        auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
        if (ec != std::errc{} || p != whole.data() + whole.size() || w > 1'000'000'000'000LL) return std::nullopt;
    }
    std::int64_t f = 0;
    if (!frac.empty()) {
        auto [p, ec] = std::from_chars(frac.data(), frac.data() + frac.size(), f);
        if (ec != std::errc{} || p != frac.data() + frac.size()) return std::nullopt;
        for (std::size_t i = frac.size(); i < 6; ++i) f *= 10;
    }
    return Money::from_micros(w * Money::kMicrosPerUnit + f);
}

}  // namespace

Population parse_population(std::istream& in, std::string_view source_name) {
    auto fail = [&](std::size_t line_no, const std::string& what) {
        throw LoadError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + what);
    };

    Population pop;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto cells = split_csv(row);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() != 3 || cells[0] != "kind" || cells[1] != "shares" || cells[2] != "cash") {
                fail(line_no, "expected header 'kind,shares,cash'");
            }
            continue;
        }
        if (cells.size() != 3) fail(line_no, "expected 3 fields, got " + std::to_string(cells.size()));
        const auto kind = parse_kind(cells[0]);
        if (!kind) fail(line_no, "unknown agent kind '" + std::string(cells[0]) + "'");
        std::int64_t shares = 0;
        auto [p, ec] = std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), shares);
        if (ec != std::errc{} || p != cells[1].data() + cells[1].size()) {
            fail(line_no, "shares must be an integer, got '" + std::string(cells[1]) + "'");
        }
        if (shares < 0) fail(line_no, "shares must be non-negative");
        if (!cells[2].empty() && cells[2].front() == '-') fail(line_no, "cash must be non-negative");
        const auto cash = parse_cash(cells[2]);
        if (!cash) fail(line_no, "cash must be a decimal amount, got '" + std::string(cells[2]) + "'");
        pop.push_back(AgentState{AgentId{static_cast<std::uint32_t>(pop.size())}, *kind, shares, *cash});
    }
    return pop;
}

Population load_population(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open endowment file " + path.string());
    return parse_population(in, path.string());
}

void write_population(std::ostream& out, std::span<const AgentState> population) {
    out << "kind,shares,cash\n";
    for (const AgentState& a : population) {
        const auto whole = a.cash.micros / Money::kMicrosPerUnit;
        const auto frac = a.cash.micros % Money::kMicrosPerUnit;
        out << kind_label(a.kind) << ',' << a.shares << ',' << whole << '.' << std::setw(6)
            << std::setfill('0') << frac << std::setfill(' ') << '\n';
    }
}

void save_population(const std::filesystem::path& path, std::span<const AgentState> population) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write endowment file " + path.string());
    write_population(out, population);
}

}  // namespace fracmkt

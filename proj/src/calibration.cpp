#include "fracmkt/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracmkt/error.hpp"
#include "fracmkt/experiments.hpp"

namespace fracmkt {

void CalibrationTargets::validate() const {
    const std::array<std::pair<const char*, double>, 5> values{{{"liquidity_ratio", liquidity_ratio},
                                                                {"n_offers", n_offers},
                                                                {"n_trades", n_trades},
                                                                {"offered_shares", offered_shares},
                                                                {"traded_shares", traded_shares}}};
    for (const auto& [name, v] : values) {
        if (!std::isfinite(v) || v == 0.0) {
            throw ConfigError(std::string("calibration target ") + name + " must be finite and non-zero");
        }
    }
    for (double w : {w_liquidity_ratio, w_n_offers, w_n_trades, w_offered_shares, w_traded_shares}) {
        if (!std::isfinite(w) || w < 0.0) throw ConfigError("calibration weights must be finite and non-negative");
    }
}

double calibration_objective(const AggregateMetrics& achieved, const CalibrationTargets& targets) {
    auto term = [](double w, double sim, double target) {
        const double rel = (sim - target) / target;
        return w * rel * rel;
    };
    const double ratio = achieved.liquidity_ratio ? achieved.liquidity_ratio->mean : 0.0;
    return term(targets.w_liquidity_ratio, ratio, targets.liquidity_ratio) +
           term(targets.w_n_offers, achieved.n_offers.mean, targets.n_offers) +
           term(targets.w_n_trades, achieved.n_trades.mean, targets.n_trades) +
           term(targets.w_offered_shares, achieved.offered_shares.mean, targets.offered_shares) +
           term(targets.w_traded_shares, achieved.traded_shares.mean, targets.traded_shares);
}

AggregateMetrics evaluate_profile(const EndowmentProfile& profile, const ModelParams& params, std::size_t days,
                                  std::uint64_t population_seed, std::uint64_t eval_seed, unsigned jobs) {
    Rng pop_rng(population_seed);
    const Population population = generate_population(profile, pop_rng);
    return run_batch(params, population, days, eval_seed, jobs).aggregate;
}

namespace {

// Continuous search coordinates, in this order.
enum Coord : std::size_t { kPsFrac, kBsFrac, kShareA, kShareB, kPbA, kPbB, kBsA, kBsB, kFloor, kCoords };

struct Families {
    DistFamily share = DistFamily::LogNormal;
    DistFamily cash_pb = DistFamily::LogNormal;
    DistFamily cash_bs = DistFamily::LogNormal;
};

using Point = std::array<double, kCoords>;
using Box = std::array<Interval, kCoords>;

Box box_for(const CalibrationBox& b, const Families& f) {
    auto share = [&](bool first) {
        if (f.share == DistFamily::Pareto) return first ? b.share_pareto_scale : b.share_pareto_shape;
        return first ? b.share_lognormal_mu : b.share_lognormal_sigma;
    };
    auto cash = [&](DistFamily fam, bool first) {
        if (fam == DistFamily::Pareto) return first ? b.cash_pareto_scale : b.cash_pareto_shape;
        return first ? b.cash_lognormal_mu : b.cash_lognormal_sigma;
    };
    return {b.ps_holder_frac, b.bs_holder_frac, share(true), share(false), cash(f.cash_pb, true),
            cash(f.cash_pb, false), cash(f.cash_bs, true), cash(f.cash_bs, false), b.cash_floor_eur};
}

EndowmentProfile to_profile(const Point& x, const Families& f, const EndowmentProfile& counts) {
    EndowmentProfile p;
    p.n_pb = counts.n_pb;
    p.n_ps = counts.n_ps;
    p.n_bs = counts.n_bs;
    p.ps_holder_frac = x[kPsFrac];
    p.bs_holder_frac = x[kBsFrac];
    p.share_dist = DistSpec{f.share, x[kShareA], x[kShareB]};
    p.cash_dist_pb = DistSpec{f.cash_pb, x[kPbA], x[kPbB]};
    p.cash_dist_bs = DistSpec{f.cash_bs, x[kBsA], x[kBsB]};
    p.cash_floor = Money::from_micros(std::llround(x[kFloor] * 100.0) * (Money::kMicrosPerUnit / 100));
    return p;
}

void check_box(const CalibrationBox& b) {
    auto check = [](const Interval& i, const char* name) {
        if (!(std::isfinite(i.lo) && std::isfinite(i.hi) && i.lo <= i.hi)) {
            throw ConfigError(std::string("calibration box ") + name + " is not a valid interval");
        }
    };
    check(b.ps_holder_frac, "ps_holder_frac");
    check(b.bs_holder_frac, "bs_holder_frac");
    check(b.share_lognormal_mu, "share_lognormal_mu");
    check(b.share_lognormal_sigma, "share_lognormal_sigma");
    check(b.share_pareto_scale, "share_pareto_scale");
    check(b.share_pareto_shape, "share_pareto_shape");
    check(b.cash_lognormal_mu, "cash_lognormal_mu");
    check(b.cash_lognormal_sigma, "cash_lognormal_sigma");
    check(b.cash_pareto_scale, "cash_pareto_scale");
    check(b.cash_pareto_shape, "cash_pareto_shape");
    check(b.cash_floor_eur, "cash_floor_eur");
    if (b.share_families.empty() || b.cash_families.empty()) {
        throw ConfigError("calibration box needs at least one share and one cash family");
    }
}

}  // namespace

CalibrationResult calibrate_profile(const CalibrationTargets& targets, const CalibrationOptions& options) {
    targets.validate();
    options.params.validate();
    check_box(options.box);
    if (options.budget == 0) throw ConfigError("calibration budget must be at least 1");
    if (options.days_per_eval == 0) throw ConfigError("days_per_eval must be at least 1");
    if (!(options.shrink > 0.0 && options.shrink <= 1.0)) throw ConfigError("shrink must lie in (0, 1]");

    CalibrationResult best;
    best.population_seed = derive_seed(options.seed, 0xCA11B, 0);
    best.eval_seed = derive_seed(options.seed, 0xCA11B, 1);
    best.objective = std::numeric_limits<double>::infinity();

    Rng search(derive_seed(options.seed, 0x5EA4C8, 0));
    const std::size_t rounds = std::clamp<std::size_t>(options.rounds, 1, options.budget);
    Point best_x{};
    Families best_f;

    for (std::size_t round = 0; round < rounds; ++round) {
        // Earlier rounds absorb the remainder so the total equals the budget.
        const std::size_t count = options.budget / rounds + (round < options.budget % rounds ? 1 : 0);
        const double scale = std::pow(options.shrink, static_cast<double>(round));
        for (std::size_t k = 0; k < count; ++k) {
            Families f = best_f;
            if (round == 0) {
                auto pick = [&](const std::vector<DistFamily>& fams) { return fams[search.index(fams.size())]; };
                f.share = pick(options.box.share_families);
                f.cash_pb = pick(options.box.cash_families);
                f.cash_bs = pick(options.box.cash_families);
            }
            const Box full = box_for(options.box, f);
            Point x{};
            for (std::size_t c = 0; c < kCoords; ++c) {
                Interval iv = full[c];
                if (round > 0) {
                    const double half = 0.5 * (full[c].hi - full[c].lo) * scale;
                    iv = {std::max(full[c].lo, best_x[c] - half), std::min(full[c].hi, best_x[c] + half)};
                }
                x[c] = search.uniform(iv.lo, iv.hi);
            }
            const EndowmentProfile profile = to_profile(x, f, options.counts);
            const AggregateMetrics achieved = evaluate_profile(profile, options.params, options.days_per_eval,
                                                               best.population_seed, best.eval_seed, options.jobs);
            const double obj = calibration_objective(achieved, targets);
            ++best.evaluations;
            if (obj < best.objective) {
                best.objective = obj;
                best.profile = profile;
                best.achieved = achieved;
                best_x = x;
                best_f = f;
            }
        }
    }
    return best;
}

}  // namespace fracmkt

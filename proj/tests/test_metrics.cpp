#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracmkt/error.hpp"
#include "fracmkt/metrics.hpp"
#include "fracmkt/rng.hpp"

using namespace fracmkt;

namespace {

Offer offer(double price, std::int64_t qty, std::uint32_t seller) {
    return Offer{Money::from_eur(price), qty, AgentId{seller}, seller};
}

FillRecord fill(std::int64_t it, std::uint32_t buyer, std::uint32_t seller, double price, std::int64_t units) {
    const Money p = Money::from_eur(price);
    return FillRecord{it, TradeFill{AgentId{buyer}, AgentId{seller}, p, units, p * units, p * units}};
}

DayMetrics day(std::int64_t offered, std::int64_t traded) {
    DayMetrics m;
    m.n_offers = offered > 0 ? 1 : 0;
    m.offered_shares = offered;
    m.traded_shares = traded;
    m.n_trades = traded > 0 ? 1 : 0;
    if (offered > 0) m.liquidity_ratio = static_cast<double>(traded) / static_cast<double>(offered);
    return m;
}

}  // namespace

TEST_CASE("day metrics") {
    const std::vector<Offer> book{offer(45.0, 10, 0), offer(48.0, 5, 1), offer(52.0, 3, 2)};
    SUBCASE("no fills") {
        const DayMetrics m = compute_day_metrics({}, book, ModelParams{});
        CHECK(m.n_offers == 3);
        CHECK(m.offered_shares == 18);
        CHECK(m.n_trades == 0);
        CHECK(m.liquidity_ratio == 0.0);
    }
    SUBCASE("counts, ratio and fees") {
        DayTrace t;
        t.fills = {fill(1, 5, 0, 45.0, 4), fill(2, 6, 0, 45.0, 6), fill(2, 5, 1, 48.0, 1)};
        const DayMetrics m = compute_day_metrics(t, book, ModelParams{});
        CHECK(m.n_trades == 3);
        CHECK(m.traded_shares == 11);
        CHECK(m.liquidity_ratio == doctest::Approx(11.0 / 18.0).epsilon(1e-15));
        CHECK(m.traded_notional == Money::from_eur(498.0));
        // 2% of 180, 270 and 48.
        CHECK(m.platform_revenue == Money::from_eur(9.96));
    }
    SUBCASE("empty book leaves the ratio undefined") {
        const DayMetrics m = compute_day_metrics({}, {}, ModelParams{});
        CHECK_FALSE(m.liquidity_ratio.has_value());
        CHECK(m.offered_shares == 0);
    }
    SUBCASE("accumulator agrees with the batch computation") {
        DayTrace t;
        t.fills = {fill(1, 5, 0, 45.0, 4), fill(3, 6, 2, 52.0, 3)};
        MetricsAccumulator acc(book);
        for (const auto& r : t.fills) acc.record_fill(r.fill, exit_fee(r.fill.notional, ModelParams{}));
        CHECK(acc.snapshot() == compute_day_metrics(t, book, ModelParams{}));
    }
}

TEST_CASE("aggregate") {
    SUBCASE("empty input is a contract violation") {
        CHECK_THROWS_AS(aggregate(std::vector<DayMetrics>{}), ContractViolation);
    }
    SUBCASE("single day has zero spread") {
        const std::vector<DayMetrics> d{day(100, 25)};
        const AggregateMetrics a = aggregate(d);
        CHECK(a.n_experiments == 1);
        REQUIRE(a.liquidity_ratio);
        CHECK(a.liquidity_ratio->mean == 0.25);
        CHECK(a.liquidity_ratio->stddev == 0.0);
        CHECK(a.offered_shares.stddev == 0.0);
    }
    SUBCASE("mean of ratios differs from ratio of means") {
        // 1/10 and 90/100: mean of ratios 0.5, ratio of totals 91/110.
        const std::vector<DayMetrics> d{day(10, 1), day(100, 90)};
        const AggregateMetrics a = aggregate(d);
        CHECK(a.liquidity_ratio->mean == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(a.offered_shares.mean == 55.0);
        CHECK(a.traded_shares.mean == 45.5);
    }
    SUBCASE("sample standard deviation") {
        // 2, 4, 4, 4, 5, 5, 7, 9: sum of squares 32, n - 1 = 7.
        std::vector<DayMetrics> d;
        for (int v : {2, 4, 4, 4, 5, 5, 7, 9}) d.push_back(day(v, 0));
        const AggregateMetrics a = aggregate(d);
        CHECK(a.offered_shares.mean == 5.0);
        CHECK(a.offered_shares.stddev == doctest::Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-14));
    }
    SUBCASE("undefined ratios are counted and excluded") {
        const std::vector<DayMetrics> d{day(0, 0), day(20, 5), day(0, 0)};
        const AggregateMetrics a = aggregate(d);
        CHECK(a.n_undefined_ratio == 2);
        CHECK(a.liquidity_ratio->mean == 0.25);
        CHECK(a.offered_shares.mean == doctest::Approx(20.0 / 3.0));
        const std::vector<DayMetrics> none{day(0, 0)};
        CHECK_FALSE(aggregate(none).liquidity_ratio.has_value());
    }
    SUBCASE("bit-identical under permutation") {
        Rng rng(99);
        std::vector<DayMetrics> d;
        for (int i = 0; i < 500; ++i) {
            const auto off = static_cast<std::int64_t>(1 + rng.index(7000));
            DayMetrics m = day(off, static_cast<std::int64_t>(rng.index(static_cast<std::uint64_t>(off))));
            m.traded_notional = Money::from_micros(static_cast<std::int64_t>(rng.index(1'000'000'000'000)));
            d.push_back(m);
        }
        const AggregateMetrics ref = aggregate(d);
        for (int i = 0; i < 20; ++i) {
            rng.shuffle(std::span<DayMetrics>(d));
            CHECK(aggregate(d) == ref);
        }
        std::reverse(d.begin(), d.end());
        CHECK(aggregate(d) == ref);
    }
}

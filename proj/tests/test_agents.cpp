#include <doctest.h>

#include <cmath>
#include <map>

#include "fracmkt/agents.hpp"
#include "fracmkt/error.hpp"
#include "test_support.hpp"

using namespace fracmkt;
using fracmkt::testing::certain_params;

namespace {

AgentState agent(std::uint32_t id, AgentKind kind, std::int64_t shares, double cash) {
    return AgentState{AgentId{id}, kind, shares, Money::from_eur(cash)};
}

Offer offer(double price, std::int64_t qty, std::uint32_t seller) {
    return Offer{Money::from_eur(price), qty, AgentId{seller}, 0};
}

}  // namespace

TEST_CASE("pure seller offers") {
    ModelParams p = certain_params();
    Rng rng(1);

    SUBCASE("no holdings, no offer") {
        CHECK_FALSE(ps_decide(agent(0, AgentKind::PureSeller, 0, 0), p, rng));
    }
    SUBCASE("baseline ratio floors 10 shares to 6 within the PS price range") {
        for (int i = 0; i < 100; ++i) {
            const auto o = ps_decide(agent(0, AgentKind::PureSeller, 10, 0), p, rng);
            REQUIRE(o);
            CHECK(o->quantity == 6);
            CHECK(o->price >= Money::from_eur(37.5));
            CHECK(o->price < Money::from_eur(52.5));
            CHECK(o->seller == AgentId{0});
        }
    }
    SUBCASE("a single share floors to zero and is never offered") {
        CHECK_FALSE(ps_decide(agent(0, AgentKind::PureSeller, 1, 0), p, rng));
    }
    SUBCASE("failed activation draw") {
        p.ps_offer_prob = 0.0;
        CHECK_FALSE(ps_decide(agent(0, AgentKind::PureSeller, 10, 0), p, rng));
    }
}

TEST_CASE("offer prices always fall inside the seller's range") {
    const ModelParams p;
    Rng rng(77);
    const Money ps_lo = Money::from_eur(p.ps_price_lo * p.p_ref), ps_hi = Money::from_eur(p.ps_price_hi * p.p_ref);
    const Money bs_lo = Money::from_eur(p.bs_price_lo * p.p_ref), bs_hi = Money::from_eur(p.bs_price_hi * p.p_ref);
    for (int i = 0; i < 20000; ++i) {
        const Money a = draw_offer_price(p.ps_price_lo, p.ps_price_hi, p.p_ref, rng);
        REQUIRE(a >= ps_lo);
        REQUIRE(a < ps_hi);
        const Money b = draw_offer_price(p.bs_price_lo, p.bs_price_hi, p.p_ref, rng);
        REQUIRE(b >= bs_lo);
        REQUIRE(b < bs_hi);
    }
}

TEST_CASE("zero-width price range yields its point") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) CHECK(draw_offer_price(0.9, 0.9, 50.0, rng) == Money::from_eur(45.0));
}

TEST_CASE("offer quantity is floor(ratio * shares)") {
    ModelParams p = certain_params();
    Rng rng(8);
    for (std::int64_t shares = 1; shares <= 400; ++shares) {
        const auto ps = ps_decide(agent(0, AgentKind::PureSeller, shares, 0), p, rng);
        const auto expected_ps = static_cast<std::int64_t>(std::floor(0.603 * static_cast<double>(shares)));
        if (expected_ps == 0) {
            CHECK_FALSE(ps);
        } else {
            REQUIRE(ps);
            CHECK(ps->quantity == expected_ps);
        }
        const auto bs = bs_offer_decide(agent(0, AgentKind::BuyerSeller, shares, 0), p, rng);
        const auto expected_bs = static_cast<std::int64_t>(std::floor(0.333 * static_cast<double>(shares)));
        CHECK(bs.has_value() == (expected_bs > 0));
        if (bs) CHECK(bs->quantity == expected_bs);
    }
}

TEST_CASE("acceptance sigmoid") {
    ModelParams p;
    CHECK(pb_accept_prob(50.0, p) == 0.5);
    // Frozen from a 40-digit evaluation of 1 / (1 + exp(k (price - p_ref))).
    CHECK(pb_accept_prob(49.0, p) == doctest::Approx(0.88079707797788244406).epsilon(1e-14));
    CHECK(pb_accept_prob(55.0, p) == doctest::Approx(4.5397868702434394505e-05).epsilon(1e-12));

    SUBCASE("midpoint is 0.5 for any steepness") {
        for (double k : {0.01, 0.5, 2.0, 3.0, 50.0, 1e6}) {
            p.k_pb = k;
            CHECK(pb_accept_prob(p.p_ref, p) == 0.5);
        }
    }
    SUBCASE("strictly decreasing in price while not saturated") {
        double prev = 1.0;
        for (double price = 40.0; price <= 60.0; price += 0.01) {
            const double q = pb_accept_prob(price, p);
            CHECK(q < prev);
            prev = q;
        }
    }
    SUBCASE("extreme arguments saturate without overflow") {
        p.k_pb = 1e9;
        CHECK(pb_accept_prob(40.0, p) == 1.0);
        CHECK(pb_accept_prob(60.0, p) < 1e-200);
        CHECK(std::isfinite(pb_accept_prob(60.0, p)));
    }
}

TEST_CASE("fill sizing") {
    SUBCASE("budget covers part of the offer") {
        // cash 100 at purchase ratio 0.566 gives a 56.60 budget: one unit at 50.
        const Money budget = scale(Money::from_eur(100.0), 0.566);
        CHECK(budget == Money::from_eur(56.6));
        const auto f = size_fill(AgentId{1}, budget, offer(50.0, 3, 0));
        REQUIRE(f);
        CHECK(f->units == 1);
        CHECK(f->notional == Money::from_eur(50.0));
    }
    SUBCASE("budget covers the whole offer") {
        const auto f = size_fill(AgentId{1}, Money::from_eur(56.6), offer(40.0, 1, 0));
        REQUIRE(f);
        CHECK(f->units == 1);
        CHECK(f->notional == Money::from_eur(40.0));
    }
    SUBCASE("not one unit affordable") {
        CHECK_FALSE(size_fill(AgentId{1}, Money::from_eur(39.99), offer(40.0, 5, 0)));
    }
    SUBCASE("budget exactly equal to the offer buys all of it") {
        const auto f = size_fill(AgentId{1}, Money::from_eur(120.0), offer(40.0, 3, 0));
        REQUIRE(f);
        CHECK(f->units == 3);
    }
}

TEST_CASE("pure buyer decisions") {
    ModelParams p = certain_params();
    Rng rng(3);
    const AgentState buyer = agent(5, AgentKind::PureBuyer, 0, 100.0);

    SUBCASE("empty book") {
        OfferBook book;
        CHECK_FALSE(pb_decide(buyer, book, p, rng));
    }
    SUBCASE("cheap single-unit offer is bought whole") {
        OfferBook book;
        book.insert(offer(40.0, 1, 0));
        const auto f = pb_decide(buyer, book, p, rng);
        REQUIRE(f);
        CHECK(f->units == 1);
        CHECK(f->notional == Money::from_eur(40.0));
        CHECK(f->purchase_budget == Money::from_eur(56.6));
    }
    SUBCASE("offers above p_ref are refused with a steep curve") {
        OfferBook book;
        book.insert(offer(52.0, 1, 0));
        for (int i = 0; i < 100; ++i) CHECK_FALSE(pb_decide(buyer, book, p, rng));
    }
    SUBCASE("acceptance rate follows the sigmoid") {
        p.k_pb = 0.5;
        OfferBook book;
        book.insert(offer(51.0, 1, 0));
        int accepted = 0;
        constexpr int n = 40000;
        for (int i = 0; i < n; ++i) accepted += pb_decide(buyer, book, p, rng).has_value();
        const double expected = pb_accept_prob(51.0, p);
        CHECK(std::abs(accepted / static_cast<double>(n) - expected) < 4.0 * std::sqrt(expected * (1 - expected) / n));
    }
    SUBCASE("inactive buyer") {
        p.pb_trade_prob = 0.0;
        OfferBook book;
        book.insert(offer(40.0, 1, 0));
        CHECK_FALSE(pb_decide(buyer, book, p, rng));
    }
    SUBCASE("pure buyers pick offers uniformly") {
        OfferBook book;
        for (std::uint32_t s = 0; s < 4; ++s) book.insert(offer(40.0 + s, 1, s));
        std::map<std::uint32_t, int> picks;
        for (int i = 0; i < 8000; ++i) ++picks[pb_decide(buyer, book, p, rng)->seller.value];
        for (const auto& [seller, n] : picks) CHECK(std::abs(n - 2000) < 200);
    }
}

TEST_CASE("buyer-seller offers") {
    ModelParams p = certain_params();
    Rng rng(4);
    SUBCASE("9 shares at ratio 0.333 floor to 2, priced in [40, 55)") {
        for (int i = 0; i < 100; ++i) {
            const auto o = bs_offer_decide(agent(2, AgentKind::BuyerSeller, 9, 10.0), p, rng);
            REQUIRE(o);
            CHECK(o->quantity == 2);
            CHECK(o->seller == AgentId{2});
            CHECK(o->price >= Money::from_eur(40.0));
            CHECK(o->price < Money::from_eur(55.0));
        }
    }
    SUBCASE("inactive") {
        p.bs_offer_prob = 0.0;
        CHECK_FALSE(bs_offer_decide(agent(2, AgentKind::BuyerSeller, 9, 10.0), p, rng));
    }
    SUBCASE("no holdings") {
        CHECK_FALSE(bs_offer_decide(agent(2, AgentKind::BuyerSeller, 0, 10.0), p, rng));
    }
}

TEST_CASE("buyer-seller purchases") {
    ModelParams p = certain_params();
    Rng rng(6);
    const AgentState bs = agent(9, AgentKind::BuyerSeller, 0, 1000.0);

    SUBCASE("nothing below p_ref") {
        OfferBook book;
        book.insert(offer(50.0, 3, 0));
        book.insert(offer(53.0, 3, 1));
        CHECK_FALSE(bs_buy_decide(bs, book, p, rng));
    }
    SUBCASE("cheapest sampled offer wins") {
        OfferBook book;
        book.insert(offer(48.0, 1, 0));
        book.insert(offer(49.5, 1, 1));
        book.insert(offer(45.0, 1, 2));
        for (int i = 0; i < 50; ++i) {
            const auto f = bs_buy_decide(bs, book, p, rng);
            REQUIRE(f);
            CHECK(f->price == Money::from_eur(45.0));
            CHECK(f->seller == AgentId{2});
        }
    }
    SUBCASE("own offer is excluded") {
        OfferBook book;
        book.insert(offer(41.0, 4, 9));
        CHECK_FALSE(bs_buy_decide(bs, book, p, rng));
    }
    SUBCASE("equal prices resolve to the earliest entry") {
        OfferBook book;
        book.insert(offer(60.0, 1, 0));
        book.insert(offer(44.0, 1, 3));
        book.insert(offer(44.0, 1, 1));
        for (int i = 0; i < 50; ++i) CHECK(bs_buy_decide(bs, book, p, rng)->seller == AgentId{3});
    }
    SUBCASE("search length 1 samples one candidate uniformly") {
        p.bs_search_len = 1;
        OfferBook book;
        book.insert(offer(40.0, 1, 0));
        book.insert(offer(45.0, 1, 1));
        book.insert(offer(51.0, 1, 2));  // never a candidate
        int cheap = 0;
        constexpr int n = 10000;
        for (int i = 0; i < n; ++i) cheap += bs_buy_decide(bs, book, p, rng)->seller == AgentId{0};
        CHECK(std::abs(cheap - n / 2) < 300);
    }
    SUBCASE("partial fill limited by the purchase ratio") {
        OfferBook book;
        book.insert(offer(45.0, 100, 0));
        const auto f = bs_buy_decide(agent(9, AgentKind::BuyerSeller, 0, 200.0), book, p, rng);
        REQUIRE(f);
        // budget = 0.485 * 200 = 97 -> 2 units at 45
        CHECK(f->purchase_budget == Money::from_eur(97.0));
        CHECK(f->units == 2);
        CHECK(f->notional <= f->purchase_budget);
    }
    SUBCASE("inactive") {
        p.bs_trade_prob = 0.0;
        OfferBook book;
        book.insert(offer(40.0, 1, 0));
        CHECK_FALSE(bs_buy_decide(bs, book, p, rng));
    }
}

TEST_CASE("settlement") {
    ModelParams p;
    AgentState buyer = agent(0, AgentKind::PureBuyer, 0, 200.0);
    AgentState seller = agent(1, AgentKind::PureSeller, 10, 0.0);
    OfferBook book;
    book.insert(offer(50.0, 6, 1));
    const TradeFill fill{buyer.id, seller.id, Money::from_eur(50.0), 2, Money::from_eur(100.0), Money::from_eur(113.2)};

    SUBCASE("balances move by the notional, fee reported as revenue") {
        const Money revenue = settle_fill(fill, buyer, seller, book, p);
        CHECK(buyer.cash == Money::from_eur(100.0));
        CHECK(buyer.shares == 2);
        CHECK(seller.shares == 8);
        CHECK(seller.cash == Money::from_eur(100.0));
        CHECK(revenue == Money::from_eur(2.0));
        CHECK(book.find(seller.id)->quantity == 4);
    }
    SUBCASE("debited exit fee") {
        p.debit_exit_fee = true;
        const Money revenue = settle_fill(fill, buyer, seller, book, p);
        CHECK(seller.cash == Money::from_eur(98.0));
        CHECK(revenue == Money::from_eur(2.0));
    }
    SUBCASE("inconsistent fills are rejected without side effects") {
        TradeFill bad = fill;
        bad.price = Money::from_eur(49.0);
        bad.notional = Money::from_eur(98.0);
        CHECK_THROWS_AS(settle_fill(bad, buyer, seller, book, p), ContractViolation);
        bad = fill;
        bad.units = 7;
        bad.notional = Money::from_eur(350.0);
        bad.purchase_budget = Money::from_eur(400.0);
        CHECK_THROWS_AS(settle_fill(bad, buyer, seller, book, p), ContractViolation);
        bad = fill;
        bad.notional = Money::from_eur(90.0);
        CHECK_THROWS_AS(settle_fill(bad, buyer, seller, book, p), ContractViolation);
        bad = fill;
        bad.purchase_budget = Money::from_eur(99.0);
        CHECK_THROWS_AS(settle_fill(bad, buyer, seller, book, p), ContractViolation);
        CHECK(buyer.cash == Money::from_eur(200.0));
        CHECK(seller.shares == 10);
        CHECK(book.find(seller.id)->quantity == 6);
    }
    SUBCASE("self-trade is rejected") {
        AgentState bs = agent(1, AgentKind::BuyerSeller, 10, 500.0);
        const TradeFill self{bs.id, bs.id, Money::from_eur(50.0), 1, Money::from_eur(50.0), Money::from_eur(100.0)};
        CHECK_THROWS_AS(settle_fill(self, bs, bs, book, p), ContractViolation);
    }
}

TEST_CASE("exit fee scale: 246 shares at 50 EUR earn 246 EUR") {
    CHECK(exit_fee(Money::from_eur(50.0) * 246, ModelParams{}) == Money::from_eur(246.0));
}

#include <doctest.h>

#include <vector>

#include "fracmkt/error.hpp"
#include "fracmkt/offer_book.hpp"
#include "fracmkt/rng.hpp"

using namespace fracmkt;

namespace {
Offer offer(double price, std::int64_t qty, std::uint32_t seller) {
    return Offer{Money::from_eur(price), qty, AgentId{seller}, 0};
}
}  // namespace

TEST_CASE("insert into an empty book") {
    OfferBook book;
    const Offer& o = book.insert(offer(50.0, 6, 0));
    CHECK(book.size() == 1);
    CHECK(o.quantity == 6);
    CHECK(book.total_quantity() == 6);
}

TEST_CASE("a seller may hold one live offer") {
    OfferBook book;
    book.insert(offer(50.0, 6, 3));
    CHECK_THROWS_AS(book.insert(offer(45.0, 1, 3)), ContractViolation);
    CHECK(book.size() == 1);
}

TEST_CASE("zero or negative quantities are rejected") {
    OfferBook book;
    CHECK_THROWS_AS(book.insert(offer(50.0, 0, 1)), ContractViolation);
    CHECK_THROWS_AS(book.insert(offer(50.0, -2, 1)), ContractViolation);
    CHECK(book.empty());
}

TEST_CASE("fills shrink or remove the offer") {
    OfferBook book;
    book.insert(offer(50.0, 3, 1));

    SUBCASE("full fill removes it") {
        book.apply_fill(AgentId{1}, 3);
        CHECK(book.empty());
        CHECK(book.find(AgentId{1}) == nullptr);
    }
    SUBCASE("partial fill keeps the remainder") {
        book.apply_fill(AgentId{1}, 1);
        REQUIRE(book.find(AgentId{1}) != nullptr);
        CHECK(book.find(AgentId{1})->quantity == 2);
    }
    SUBCASE("over-fill is an error") {
        CHECK_THROWS_AS(book.apply_fill(AgentId{1}, 4), ContractViolation);
        CHECK(book.find(AgentId{1})->quantity == 3);
    }
    SUBCASE("zero-unit fill and unknown seller are errors") {
        CHECK_THROWS_AS(book.apply_fill(AgentId{1}, 0), ContractViolation);
        CHECK_THROWS_AS(book.apply_fill(AgentId{9}, 1), ContractViolation);
    }
}

TEST_CASE("a seller may relist once the previous offer is exhausted") {
    OfferBook book;
    book.insert(offer(50.0, 1, 1));
    book.apply_fill(AgentId{1}, 1);
    CHECK_NOTHROW(book.insert(offer(48.0, 2, 1)));
}

TEST_CASE("random insert and fill sequences keep the book accounting consistent") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        OfferBook book;
        std::int64_t inserted_units = 0, filled_units = 0;
        std::size_t inserts = 0, removals = 0;
        std::uint64_t last_entry = 0;
        bool first = true;
        std::uint32_t next_seller = 0;
        for (int step = 0; step < 60; ++step) {
            if (book.empty() || rng.bernoulli(0.4)) {
                const auto qty = static_cast<std::int64_t>(1 + rng.index(20));
                const Offer& o = book.insert(offer(rng.uniform(37.5, 55.0), qty, next_seller++));
                if (!first) CHECK(o.entry_order > last_entry);
                last_entry = o.entry_order;
                first = false;
                inserted_units += qty;
                ++inserts;
            } else {
                const Offer& target = book.at(rng.index(book.size()));
                const auto units = static_cast<std::int64_t>(1 + rng.index(static_cast<std::uint64_t>(target.quantity)));
                const bool full = units == target.quantity;
                const std::int64_t before = book.total_quantity();
                book.apply_fill(target.seller, units);
                CHECK(book.total_quantity() == before - units);
                filled_units += units;
                if (full) ++removals;
            }
            CHECK(book.size() == inserts - removals);
            CHECK(filled_units <= inserted_units);
            CHECK(book.total_quantity() == inserted_units - filled_units);
        }
        // Entry order is preserved by removals.
        for (std::size_t i = 1; i < book.size(); ++i) CHECK(book.at(i - 1).entry_order < book.at(i).entry_order);
    }
}

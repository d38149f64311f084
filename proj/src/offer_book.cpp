#include "fracmkt/offer_book.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fracmkt/error.hpp"

namespace fracmkt {

const Offer& OfferBook::insert(Offer offer) {
    if (offer.quantity <= 0) {
        throw ContractViolation("offer quantity must be positive, got " + std::to_string(offer.quantity));
    }
    if (find(offer.seller) != nullptr) {
        throw ContractViolation("seller " + std::to_string(offer.seller.value) + " already has a live offer");
    }
    offer.entry_order = next_entry_++;
    offers_.push_back(offer);
    return offers_.back();
}

void OfferBook::apply_fill(AgentId seller, std::int64_t units) {
    auto it = std::find_if(offers_.begin(), offers_.end(),
                           [seller](const Offer& o) { return o.seller == seller; });
    if (it == offers_.end()) {
        throw ContractViolation("no live offer for seller " + std::to_string(seller.value));
    }
    if (units < 1 || units > it->quantity) {
        throw ContractViolation("fill of " + std::to_string(units) + " units against offer of " +
                                std::to_string(it->quantity));
    }
    it->quantity -= units;
    if (it->quantity == 0) offers_.erase(it);
}

const Offer* OfferBook::find(AgentId seller) const {
    auto it = std::find_if(offers_.begin(), offers_.end(),
                           [seller](const Offer& o) { return o.seller == seller; });
    return it == offers_.end() ? nullptr : &*it;
}

std::int64_t OfferBook::total_quantity() const {
    return std::accumulate(offers_.begin(), offers_.end(), std::int64_t{0},
                           [](std::int64_t acc, const Offer& o) { return acc + o.quantity; });
}

}  // namespace fracmkt

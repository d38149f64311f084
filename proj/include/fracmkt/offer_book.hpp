#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracmkt/model.hpp"

namespace fracmkt {

/// One-sided book of live sell offers, kept in entry order.
///
/// Each seller has at most one live offer. Quantities only shrink after
/// insertion; an offer leaves the book the moment it is fully filled.
class OfferBook {
public:
    /// Appends `offer` with the next entry_order and returns the stored copy.
    /// Throws ContractViolation for a non-positive quantity or a seller that already has a live offer.
    const Offer& insert(Offer offer);

    /// Removes `units` from the seller's live offer, erasing it when exhausted.
    /// Throws ContractViolation when the seller has no offer or `units` is out of [1, quantity].
    void apply_fill(AgentId seller, std::int64_t units);

    [[nodiscard]] const Offer* find(AgentId seller) const;
    [[nodiscard]] std::span<const Offer> offers() const { return offers_; }
    [[nodiscard]] const Offer& at(std::size_t i) const { return offers_.at(i); }
    [[nodiscard]] std::size_t size() const { return offers_.size(); }
    [[nodiscard]] bool empty() const { return offers_.empty(); }
    [[nodiscard]] std::int64_t total_quantity() const;

    void clear() { offers_.clear(); }

private:
    std::vector<Offer> offers_;
    std::uint64_t next_entry_ = 0;
};

}  // namespace fracmkt

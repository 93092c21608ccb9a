#include "retail/inventory.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "retail/errors.hpp"

namespace retail {

InventoryLedger::InventoryLedger(std::vector<int> shelf_lives, std::int64_t capacity)
    : shelf_lives_(std::move(shelf_lives)), lots_(shelf_lives_.size()), capacity_(capacity) {
    if (capacity_ <= 0) throw ConfigError("inventory capacity must be positive");
}

void InventoryLedger::place(const Delivery& d, std::int64_t quantity, int day) {
    if (quantity <= 0) return;
    Lot lot;
    lot.order_id = d.order_id;
    lot.quantity = quantity;
    lot.arrival_day = day;
    lot.shelf_life_days = shelf_lives_[d.sku];
    lot.unit_cost = d.unit_cost;
    lot.source_quality = d.source_quality;
    lot.supplier_id = d.supplier_id;
    lots_[d.sku].push_back(std::move(lot));
    total_on_hand_ += quantity;
}

ArrivalResult InventoryLedger::add_arrivals(std::span<const Delivery> deliveries, int day) {
    ArrivalResult out{std::vector<std::int64_t>(lots_.size(), 0), std::vector<std::int64_t>(lots_.size(), 0)};
    for (const auto& d : deliveries) {
        if (d.sku >= lots_.size()) throw ConsistencyError("delivery for unknown SKU index");
        const std::int64_t room = pending_.empty() ? free_capacity() : 0;
        const std::int64_t placed = std::min(room, d.quantity);
        place(d, placed, day);
        out.placed[d.sku] += placed;
        if (placed < d.quantity) {
            Delivery rest = d;
            rest.quantity = d.quantity - placed;
            out.queued[d.sku] += rest.quantity;
            pending_.push_back(std::move(rest));
        }
    }
    return out;
}

std::vector<std::int64_t> InventoryLedger::release_pending(int day) {
    std::vector<std::int64_t> released(lots_.size(), 0);
    while (!pending_.empty() && free_capacity() > 0) {
        Delivery& head = pending_.front();
        const std::int64_t take = std::min(head.quantity, free_capacity());
        place(head, take, day);
        released[head.sku] += take;
        head.quantity -= take;
        if (head.quantity == 0) pending_.pop_front();
    }
    return released;
}

ConsumeResult InventoryLedger::consume_sales(std::span<const std::int64_t> sold, int day) {
    if (sold.size() != lots_.size()) throw ConsistencyError("sales vector does not match inventory");
    for (std::size_t j = 0; j < sold.size(); ++j) {
        if (sold[j] < 0 || sold[j] > sellable(j, day))
            throw ConsistencyError(fmt::format("oversell of SKU index {}: {} requested", j, sold[j]));
    }
    ConsumeResult out;
    out.cost.assign(lots_.size(), Money{});
    for (std::size_t j = 0; j < sold.size(); ++j) {
        std::int64_t remaining = sold[j];
        auto& lots = lots_[j];
        for (auto it = lots.begin(); it != lots.end() && remaining > 0;) {
            if (it->expired(day)) {
                ++it;
                continue;
            }
            const std::int64_t take = std::min(remaining, it->quantity);
            out.chunks.push_back(SoldChunk{j, take, it->source_quality, it->unit_cost});
            out.cost[j] += it->unit_cost * take;
            it->quantity -= take;
            remaining -= take;
            total_on_hand_ -= take;
            it = it->quantity == 0 ? lots.erase(it) : std::next(it);
        }
    }
    return out;
}

std::vector<std::int64_t> InventoryLedger::expire_units(int day) {
    std::vector<std::int64_t> expired(lots_.size(), 0);
    for (std::size_t j = 0; j < lots_.size(); ++j) {
        std::erase_if(lots_[j], [&](const Lot& lot) {
            if (!lot.expired(day)) return false;
            expired[j] += lot.quantity;
            return true;
        });
        total_on_hand_ -= expired[j];
        expired_total_ += expired[j];
    }
    return expired;
}

std::int64_t InventoryLedger::on_hand(std::size_t sku) const {
    return std::accumulate(lots_[sku].begin(), lots_[sku].end(), std::int64_t{0},
                           [](std::int64_t acc, const Lot& l) { return acc + l.quantity; });
}

std::int64_t InventoryLedger::sellable(std::size_t sku, int day) const {
    std::int64_t n = 0;
    for (const auto& l : lots_[sku])
        if (!l.expired(day)) n += l.quantity;
    return n;
}

std::vector<std::int64_t> InventoryLedger::sellable_all(int day) const {
    std::vector<std::int64_t> out(lots_.size());
    for (std::size_t j = 0; j < lots_.size(); ++j) out[j] = sellable(j, day);
    return out;
}

std::int64_t InventoryLedger::pending_units(std::size_t sku) const {
    std::int64_t n = 0;
    for (const auto& d : pending_)
        if (d.sku == sku) n += d.quantity;
    return n;
}

std::int64_t InventoryLedger::pending_total() const {
    std::int64_t n = 0;
    for (const auto& d : pending_) n += d.quantity;
    return n;
}

}  // namespace retail

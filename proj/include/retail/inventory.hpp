#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "retail/money.hpp"

namespace retail {

/// Units from one delivery that entered on-hand stock on arrival_day.
struct Lot {
    std::int64_t order_id = 0;
    std::int64_t quantity = 0;
    int arrival_day = 0;
    int shelf_life_days = 1;
    Money unit_cost;
    double source_quality = 1.0;
    std::string supplier_id;

    int age(int day) const { return day - arrival_day; }
    bool expired(int day) const { return age(day) > shelf_life_days; }
};

/// A delivered purchase order on its way into stock. Also the element type of
/// the pending (overflow) queue.
struct Delivery {
    std::int64_t order_id = 0;
    std::size_t sku = 0;
    std::int64_t quantity = 0;
    Money unit_cost;
    double source_quality = 1.0;
    std::string supplier_id;
};

struct ArrivalResult {
    std::vector<std::int64_t> placed;
    std::vector<std::int64_t> queued;
};

/// Units of one lot handed to customers.
struct SoldChunk {
    std::size_t sku = 0;
    std::int64_t quantity = 0;
    double source_quality = 1.0;
    Money unit_cost;
};

struct ConsumeResult {
    std::vector<Money> cost;  ///< cost of goods sold per SKU
    std::vector<SoldChunk> chunks;
};

/// Age-tracked stock per SKU with a global capacity and a FIFO overflow queue.
/// Pending units neither age nor count against capacity.
class InventoryLedger {
public:
    InventoryLedger() = default;
    InventoryLedger(std::vector<int> shelf_lives, std::int64_t capacity);

    /// Places deliveries in order up to free capacity; the rest is queued.
    /// While older units are still queued, new deliveries join the queue.
    ArrivalResult add_arrivals(std::span<const Delivery> deliveries, int day);
    /// Moves queued units into stock, oldest first, while space allows.
    std::vector<std::int64_t> release_pending(int day);
    /// Removes sold units oldest-lot-first. Throws ConsistencyError on oversell.
    ConsumeResult consume_sales(std::span<const std::int64_t> sold, int day);
    /// Drops every lot whose age exceeds its shelf life.
    std::vector<std::int64_t> expire_units(int day);

    std::size_t sku_count() const { return lots_.size(); }
    std::int64_t capacity() const { return capacity_; }
    std::int64_t on_hand(std::size_t sku) const;
    std::int64_t sellable(std::size_t sku, int day) const;
    std::vector<std::int64_t> sellable_all(int day) const;
    std::int64_t total_on_hand() const { return total_on_hand_; }
    std::int64_t free_capacity() const { return capacity_ - total_on_hand_; }
    std::int64_t pending_units(std::size_t sku) const;
    std::int64_t pending_total() const;
    std::int64_t expired_total() const { return expired_total_; }

    const std::deque<Lot>& lots(std::size_t sku) const { return lots_[sku]; }
    const std::deque<Delivery>& pending() const { return pending_; }

private:
    void place(const Delivery& d, std::int64_t quantity, int day);

    std::vector<int> shelf_lives_;
    std::vector<std::deque<Lot>> lots_;
    std::deque<Delivery> pending_;
    std::int64_t capacity_ = 0;
    std::int64_t total_on_hand_ = 0;
    std::int64_t expired_total_ = 0;
};

}  // namespace retail

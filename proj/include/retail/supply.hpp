#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retail/catalog.hpp"
#include "retail/finance.hpp"
#include "retail/json.hpp"
#include "retail/money.hpp"
#include "retail/news.hpp"
#include "retail/rng.hpp"

namespace retail {

inline constexpr int kSuppliersPerSku = 5;
inline constexpr int kMaxLeadTime = 7;

struct Supplier {
    std::string supplier_id;
    std::string sku_id;
    Money base_cost;
    double quality = 1.0;
    int lead_time_min = 1;
    int lead_time_max = kMaxLeadTime;

    bool operator==(const Supplier&) const = default;
};

/// Suppliers of every SKU, indexed like the catalog.
class SupplierTable {
public:
    SupplierTable() = default;
    explicit SupplierTable(std::vector<std::vector<Supplier>> by_sku) : by_sku_(std::move(by_sku)) {}

    const std::vector<Supplier>& of(std::size_t sku) const { return by_sku_[sku]; }
    std::size_t sku_count() const { return by_sku_.size(); }
    const Supplier* find(std::size_t sku, std::string_view supplier_id) const;

    bool operator==(const SupplierTable&) const = default;

private:
    std::vector<std::vector<Supplier>> by_sku_;
};

/// Five suppliers per SKU on fixed quality tiers with costs rising with
/// quality. Sets each SKU's reference_cost to the mean supplier cost.
SupplierTable generate_suppliers(Catalog& catalog, std::uint64_t seed);

/// base_cost scaled by `multiplier`, rounded to the cent (at least one cent).
Money quote_price(const Supplier& supplier, double multiplier);

/// Quotes for every (SKU, supplier) under the active news events.
std::vector<std::vector<Money>> quote_prices(const Catalog& catalog, const SupplierTable& suppliers,
                                             std::span<const NewsEvent> active);

enum class OrderStatus { pending, delivered };

struct PurchaseOrder {
    std::int64_t order_id = 0;
    std::size_t sku = 0;
    std::string sku_id;
    std::string supplier_id;
    std::int64_t quantity = 0;
    Money unit_cost_paid;
    int placed_day = 0;
    int arrival_day = 0;
    OrderStatus status = OrderStatus::pending;

    bool operator==(const PurchaseOrder&) const = default;
};

Json to_json(const PurchaseOrder& order);

class OrderBook {
public:
    /// Validates the request, debits quantity * unit_price from `finance`,
    /// samples the lead time and records the order. Errors: ReferenceError,
    /// ValidationError, FundsError. No stream draw happens on error.
    PurchaseOrder place_order(const Catalog& catalog, const SupplierTable& suppliers, FinancialState& finance,
                              std::string_view sku_id, std::string_view supplier_id, std::int64_t quantity,
                              Money unit_price, int day, Engine& leadtime_rng);

    /// Pending orders arriving on `day`, in order-id order; marks them delivered.
    std::vector<PurchaseOrder> deliveries_due(int day);

    const std::vector<PurchaseOrder>& orders() const { return orders_; }
    std::int64_t units_on_order(std::size_t sku) const { return sku < on_order_.size() ? on_order_[sku] : 0; }
    std::int64_t units_on_order_total() const { return on_order_total_; }
    std::vector<PurchaseOrder> pending_orders() const;
    std::int64_t delivered_units() const { return delivered_units_; }

private:
    std::vector<PurchaseOrder> orders_;
    std::vector<std::size_t> pending_;  ///< indices into orders_, id order
    std::vector<std::int64_t> on_order_;
    std::int64_t on_order_total_ = 0;
    std::int64_t next_id_ = 1;
    std::int64_t delivered_units_ = 0;
};

}  // namespace retail

#include "retail/supply.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include <fmt/format.h>

#include "retail/errors.hpp"

namespace retail {

namespace {

constexpr std::array<double, kSuppliersPerSku> kQualityTiers{0.2, 0.4, 0.6, 0.8, 1.0};
constexpr std::array<double, kSuppliersPerSku> kCostFactors{0.35, 0.42, 0.50, 0.58, 0.65};

}  // namespace

const Supplier* SupplierTable::find(std::size_t sku, std::string_view supplier_id) const {
    if (sku >= by_sku_.size()) return nullptr;
    for (const auto& s : by_sku_[sku])
        if (s.supplier_id == supplier_id) return &s;
    return nullptr;
}

SupplierTable generate_suppliers(Catalog& catalog, std::uint64_t seed) {
    std::vector<std::vector<Supplier>> table;
    table.reserve(catalog.size());
    for (std::size_t j = 0; j < catalog.size(); ++j) {
        const auto& sku = catalog.sku(j);
        Engine rng(stream_seed(seed, "suppliers/" + sku.sku_id));

        // Fisher-Yates over the letters so the id carries no tier information.
        std::array<char, kSuppliersPerSku> letters{'A', 'B', 'C', 'D', 'E'};
        for (int i = kSuppliersPerSku - 1; i > 0; --i)
            std::swap(letters[static_cast<std::size_t>(i)],
                      letters[static_cast<std::size_t>(draw::uniform_int(rng, 0, i))]);

        std::vector<Supplier> suppliers;
        std::int64_t cost_sum = 0;
        for (std::size_t k = 0; k < kSuppliersPerSku; ++k) {
            Supplier s;
            s.supplier_id = fmt::format("supplier_{}", letters[k]);
            s.sku_id = sku.sku_id;
            s.quality = kQualityTiers[k];
            s.base_cost = Money::round_cents(static_cast<double>(sku.base_price.cents()) * kCostFactors[k]);
            if (s.base_cost.cents() < 1) s.base_cost = Money::from_cents(1);
            s.lead_time_min = static_cast<int>(draw::uniform_int(rng, 1, 3));
            s.lead_time_max = static_cast<int>(draw::uniform_int(rng, std::max(s.lead_time_min, 3), kMaxLeadTime));
            cost_sum += s.base_cost.cents();
            suppliers.push_back(std::move(s));
        }
        std::sort(suppliers.begin(), suppliers.end(),
                  [](const Supplier& a, const Supplier& b) { return a.supplier_id < b.supplier_id; });
        catalog.set_reference_cost(j, Money::round_cents(static_cast<double>(cost_sum) / kSuppliersPerSku));
        table.push_back(std::move(suppliers));
    }
    return SupplierTable(std::move(table));
}

Money quote_price(const Supplier& supplier, double multiplier) {
    const Money m = Money::round_cents(static_cast<double>(supplier.base_cost.cents()) * multiplier);
    return m.cents() < 1 ? Money::from_cents(1) : m;
}

std::vector<std::vector<Money>> quote_prices(const Catalog& catalog, const SupplierTable& suppliers,
                                             std::span<const NewsEvent> active) {
    std::vector<std::vector<Money>> out(catalog.size());
    for (std::size_t j = 0; j < catalog.size(); ++j) {
        const double mult = supply_multiplier(catalog, j, active);
        for (const auto& s : suppliers.of(j)) out[j].push_back(quote_price(s, mult));
    }
    return out;
}

Json to_json(const PurchaseOrder& o) {
    Json j;
    j["order_id"] = o.order_id;
    j["sku_id"] = o.sku_id;
    j["supplier_id"] = o.supplier_id;
    j["quantity"] = o.quantity;
    j["unit_cost_paid"] = o.unit_cost_paid;
    j["placed_day"] = o.placed_day;
    j["arrival_day"] = o.arrival_day;
    j["status"] = o.status == OrderStatus::pending ? "pending" : "delivered";
    return j;
}

PurchaseOrder OrderBook::place_order(const Catalog& catalog, const SupplierTable& suppliers, FinancialState& finance,
                                     std::string_view sku_id, std::string_view supplier_id, std::int64_t quantity,
                                     Money unit_price, int day, Engine& leadtime_rng) {
    const auto sku = catalog.find(sku_id);
    if (!sku) throw ReferenceError(fmt::format("unknown SKU '{}'", sku_id));
    const Supplier* supplier = suppliers.find(*sku, supplier_id);
    if (!supplier) throw ReferenceError(fmt::format("SKU {} has no supplier '{}'", sku_id, supplier_id));
    if (quantity <= 0) throw ValidationError("order quantity must be positive");

    debit_procurement(finance, unit_price * quantity);
    const auto lead = draw::uniform_int(leadtime_rng, supplier->lead_time_min, supplier->lead_time_max);

    PurchaseOrder o;
    o.order_id = next_id_++;
    o.sku = *sku;
    o.sku_id = std::string(sku_id);
    o.supplier_id = std::string(supplier_id);
    o.quantity = quantity;
    o.unit_cost_paid = unit_price;
    o.placed_day = day;
    o.arrival_day = day + static_cast<int>(lead);
    pending_.push_back(orders_.size());
    orders_.push_back(o);
    if (on_order_.size() <= o.sku) on_order_.resize(o.sku + 1, 0);
    on_order_[o.sku] += quantity;
    on_order_total_ += quantity;
    return o;
}

std::vector<PurchaseOrder> OrderBook::deliveries_due(int day) {
    std::vector<PurchaseOrder> due;
    std::erase_if(pending_, [&](std::size_t idx) {
        auto& o = orders_[idx];
        if (o.arrival_day != day) return false;
        o.status = OrderStatus::delivered;
        delivered_units_ += o.quantity;
        on_order_[o.sku] -= o.quantity;
        on_order_total_ -= o.quantity;
        due.push_back(o);
        return true;
    });
    return due;
}

std::vector<PurchaseOrder> OrderBook::pending_orders() const {
    std::vector<PurchaseOrder> out;
    out.reserve(pending_.size());
    for (auto idx : pending_) out.push_back(orders_[idx]);
    return out;
}

}  // namespace retail

#pragma once

#include <string>
#include <vector>

#include "retail/json.hpp"

namespace retail {

struct SupplierMapping {
    std::string sku_id;
    std::string supplier_id;
    bool operator==(const SupplierMapping&) const = default;
};

struct PriceAdjustment {
    std::string sku_id;
    Json adjustment;  ///< stored verbatim, never interpreted
    bool operator==(const PriceAdjustment&) const = default;
};

/// The seven-field operational plan.
struct ExecuteStrategy {
    std::vector<std::string> focus_skus;
    std::vector<SupplierMapping> sku_supplier_mapping;
    std::vector<std::string> news_to_monitor;
    std::vector<std::string> skus_to_reorder;
    std::vector<PriceAdjustment> price_adjustments;
    std::vector<std::string> sku_to_monitor;
    std::vector<Json> other;

    bool operator==(const ExecuteStrategy&) const = default;
};

/// One entry of today_action: a planned place_order or modify_sku_price call.
struct PlannedAction {
    std::string tool;
    Json arguments = Json::object();
    bool operator==(const PlannedAction&) const = default;
};

struct StrategyRecord {
    int day = 0;
    std::vector<std::string> macro_strategy;
    ExecuteStrategy execute_strategy;
    std::vector<PlannedAction> today_action;

    bool operator==(const StrategyRecord&) const = default;
};

// Parsers throw ArgumentError with a message naming the offending field.
std::vector<std::string> parse_macro_strategy(const Json& j);
/// Missing fields default to empty lists; unknown fields are rejected.
ExecuteStrategy parse_execute_strategy(const Json& j);
std::vector<PlannedAction> parse_today_action(const Json& j);

Json to_json(const ExecuteStrategy& s);
Json to_json(const std::vector<PlannedAction>& actions);
/// {"macro_strategy", "execute_strategy", "today_action"}: the same shapes the
/// set_* tools accept.
Json to_json(const StrategyRecord& record);
StrategyRecord strategy_from_json(const Json& j, int day);

}  // namespace retail

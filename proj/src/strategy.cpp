#include "retail/strategy.hpp"

#include <array>
#include <string_view>

#include <fmt/format.h>

#include "retail/errors.hpp"

namespace retail {

namespace {

constexpr std::array<std::string_view, 7> kExecuteFields{
    "focus_skus", "sku_supplier_mapping", "news_to_monitor", "skus_to_reorder",
    "price_adjustments", "sku_to_monitor", "other",
};

// SKU ids sometimes arrive as bare numbers; they are kept in their JSON text form.
std::string id_string(const Json& v, std::string_view field) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    throw ArgumentError(fmt::format("{} entries must be strings", field));
}

std::vector<std::string> string_list(const Json& j, std::string_view field) {
    if (!j.is_array()) throw ArgumentError(fmt::format("{} must be an array", field));
    std::vector<std::string> out;
    for (const auto& v : j) out.push_back(id_string(v, field));
    return out;
}

const Json& member(const Json& obj, std::string_view key, std::string_view field) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ArgumentError(fmt::format("{} entries need a '{}' key", field, key));
    return *it;
}

}  // namespace

std::vector<std::string> parse_macro_strategy(const Json& j) {
    if (!j.is_array()) throw ArgumentError("macro_strategy must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) throw ArgumentError("macro_strategy must be an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

ExecuteStrategy parse_execute_strategy(const Json& j) {
    if (!j.is_object()) throw ArgumentError("execute_strategy must be an object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(kExecuteFields.begin(), kExecuteFields.end(), key) == kExecuteFields.end())
            throw ArgumentError(fmt::format("execute_strategy has unknown field '{}'", key));
    }
    ExecuteStrategy s;
    if (j.contains("focus_skus")) s.focus_skus = string_list(j["focus_skus"], "focus_skus");
    if (j.contains("sku_supplier_mapping")) {
        const auto& arr = j["sku_supplier_mapping"];
        if (!arr.is_array()) throw ArgumentError("sku_supplier_mapping must be an array");
        for (const auto& m : arr) {
            if (!m.is_object()) throw ArgumentError("sku_supplier_mapping entries must be objects");
            s.sku_supplier_mapping.push_back({id_string(member(m, "sku_id", "sku_supplier_mapping"), "sku_id"),
                                              id_string(member(m, "supplier_id", "sku_supplier_mapping"),
                                                        "supplier_id")});
        }
    }
    if (j.contains("news_to_monitor")) {
        const auto& arr = j["news_to_monitor"];
        if (!arr.is_array()) throw ArgumentError("news_to_monitor must be an array");
        for (const auto& v : arr) s.news_to_monitor.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    if (j.contains("skus_to_reorder")) s.skus_to_reorder = string_list(j["skus_to_reorder"], "skus_to_reorder");
    if (j.contains("price_adjustments")) {
        const auto& arr = j["price_adjustments"];
        if (!arr.is_array()) throw ArgumentError("price_adjustments must be an array");
        for (const auto& a : arr) {
            if (!a.is_object()) throw ArgumentError("price_adjustments entries must be objects");
            s.price_adjustments.push_back({id_string(member(a, "sku_id", "price_adjustments"), "sku_id"),
                                           member(a, "adjustment", "price_adjustments")});
        }
    }
    if (j.contains("sku_to_monitor")) s.sku_to_monitor = string_list(j["sku_to_monitor"], "sku_to_monitor");
    if (j.contains("other")) {
        if (!j["other"].is_array()) throw ArgumentError("other must be an array");
        for (const auto& v : j["other"]) s.other.push_back(v);
    }
    return s;
}

std::vector<PlannedAction> parse_today_action(const Json& j) {
    if (!j.is_array()) throw ArgumentError("action must be an array");
    std::vector<PlannedAction> out;
    for (const auto& a : j) {
        if (!a.is_object() || !a.contains("tool") || !a["tool"].is_string())
            throw ArgumentError("each action needs a string 'tool'");
        PlannedAction p;
        p.tool = a["tool"].get<std::string>();
        if (p.tool != "place_order" && p.tool != "modify_sku_price")
            throw ArgumentError(fmt::format("action tool '{}' is not place_order or modify_sku_price", p.tool));
        if (a.contains("arguments")) {
            if (!a["arguments"].is_object()) throw ArgumentError("action arguments must be an object");
            p.arguments = a["arguments"];
        }
        out.push_back(std::move(p));
    }
    return out;
}

Json to_json(const ExecuteStrategy& s) {
    Json j = Json::object();
    j["focus_skus"] = s.focus_skus;
    Json mapping = Json::array();
    for (const auto& m : s.sku_supplier_mapping) mapping.push_back({{"sku_id", m.sku_id}, {"supplier_id", m.supplier_id}});
    j["sku_supplier_mapping"] = std::move(mapping);
    j["news_to_monitor"] = s.news_to_monitor;
    j["skus_to_reorder"] = s.skus_to_reorder;
    Json adjustments = Json::array();
    for (const auto& a : s.price_adjustments) adjustments.push_back({{"sku_id", a.sku_id}, {"adjustment", a.adjustment}});
    j["price_adjustments"] = std::move(adjustments);
    j["sku_to_monitor"] = s.sku_to_monitor;
    j["other"] = Json(s.other);
    return j;
}

Json to_json(const std::vector<PlannedAction>& actions) {
    Json j = Json::array();
    for (const auto& a : actions) j.push_back({{"tool", a.tool}, {"arguments", a.arguments}});
    return j;
}

Json to_json(const StrategyRecord& r) {
    Json j = Json::object();
    j["macro_strategy"] = r.macro_strategy;
    j["execute_strategy"] = to_json(r.execute_strategy);
    j["today_action"] = to_json(r.today_action);
    return j;
}

StrategyRecord strategy_from_json(const Json& j, int day) {
    StrategyRecord r;
    r.day = day;
    r.macro_strategy = parse_macro_strategy(j.at("macro_strategy"));
    r.execute_strategy = parse_execute_strategy(j.at("execute_strategy"));
    r.today_action = parse_today_action(j.at("today_action"));
    return r;
}

}  // namespace retail

#include "retail/toolapi.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "retail/errors.hpp"

namespace retail {

namespace {

/// Thrown inside tool bodies; converted into a ToolError by dispatch.
struct ToolFailure {
    std::string_view code;
    std::string message;
};

[[noreturn]] void fail(std::string_view c, std::string message) { throw ToolFailure{c, std::move(message)}; }

void expect_keys(const Json& args, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : args.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(code::invalid_arguments, fmt::format("unexpected argument '{}'", key));
}

std::optional<std::string> opt_id(const Json& args, std::string_view key) {
    auto it = args.find(key);
    if (it == args.end() || it->is_null()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
    fail(code::invalid_arguments, fmt::format("'{}' must be a string", key));
}

std::string req_id(const Json& args, std::string_view key) {
    auto v = opt_id(args, key);
    if (!v) fail(code::invalid_arguments, fmt::format("missing argument '{}'", key));
    return *v;
}

std::optional<std::int64_t> integer_value(const Json& v) {
    if (v.is_number_integer() || v.is_number_unsigned()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
    }
    return std::nullopt;
}

std::size_t sku_index(const WorldState& s, const std::string& sku_id) {
    auto j = s.catalog.find(sku_id);
    if (!j) fail(code::unknown_reference, fmt::format("unknown SKU '{}'", sku_id));
    return *j;
}

Json money_json(Money m) { return Json(m); }

// ---- read tools ----

Json view_funds_and_date(const WorldState& s) {
    Json j;
    j["day"] = s.day;
    j["date"] = s.calendar.date_string(s.day);
    static constexpr std::array<std::string_view, 7> kNames{"Monday", "Tuesday", "Wednesday", "Thursday",
                                                            "Friday",  "Saturday", "Sunday"};
    j["weekday"] = kNames[static_cast<std::size_t>(s.calendar.weekday_index(s.day))];
    j["phase"] = to_string(s.phase);
    j["funds"] = s.finance.funds;
    j["net_worth"] = current_net_worth(s);
    j["daily_rent"] = s.config.daily_rent;
    j["consecutive_unpaid_rent_days"] = s.finance.consecutive_unpaid_rent_days;
    j["max_days"] = s.config.max_days;
    return j;
}

Json view_inventory(const WorldState& s) {
    Json j;
    j["day"] = s.day;
    j["capacity"] = s.inventory.capacity();
    j["total_on_hand"] = s.inventory.total_on_hand();
    j["free_capacity"] = s.inventory.free_capacity();
    j["pending_total"] = s.inventory.pending_total();
    j["on_order_total"] = s.orders.units_on_order_total();
    Json skus = Json::array();
    for (std::size_t k = 0; k < s.sku_count(); ++k) {
        const auto& spec = s.catalog.sku(k);
        Json lots = Json::array();
        for (const auto& lot : s.inventory.lots(k)) lots.push_back({{"age", lot.age(s.day)}, {"quantity", lot.quantity}});
        skus.push_back({
            {"sku_id", spec.sku_id},
            {"description", spec.description},
            {"category", spec.category_id},
            {"price", s.prices[k]},
            {"shelf_life_days", spec.shelf_life_days},
            {"on_hand", s.inventory.on_hand(k)},
            {"sellable", s.inventory.sellable(k, s.day)},
            {"lots", std::move(lots)},
            {"pending", s.inventory.pending_units(k)},
            {"on_order", s.orders.units_on_order(k)},
        });
    }
    j["skus"] = std::move(skus);
    return j;
}

Json view_sku_sales_history(const WorldState& s, const Json& args) {
    expect_keys(args, {"sku_id", "start_day", "end_day"});
    const auto k = sku_index(s, req_id(args, "sku_id"));
    int start = 1;
    int end = s.day - 1;
    if (auto it = args.find("start_day"); it != args.end()) {
        auto d = parse_day(*it, s.calendar);
        if (!d) fail(code::invalid_arguments, "start_day must be a day number or a date");
        start = *d;
    }
    if (auto it = args.find("end_day"); it != args.end()) {
        auto d = parse_day(*it, s.calendar);
        if (!d) fail(code::invalid_arguments, "end_day must be a day number or a date");
        end = *d;
    }
    if (start > end) fail(code::invalid_arguments, fmt::format("start_day {} is after end_day {}", start, end));
    const int lo = std::max(start, 1);
    const int hi = std::min(end, s.day - 1);
    Json records = Json::array();
    for (const auto& rec : s.sales_history[k]) {
        if (rec.day < lo || rec.day > hi) continue;
        records.push_back(
            {{"day", rec.day}, {"date", s.calendar.date_string(rec.day)}, {"units", rec.units}, {"price", rec.price}});
    }
    return {{"sku_id", s.catalog.sku(k).sku_id}, {"start_day", lo}, {"end_day", hi}, {"records", std::move(records)}};
}

Json view_sku_avg_ratings(const WorldState& s, const Json& args) {
    expect_keys(args, {"sku_id"});
    const auto k = sku_index(s, req_id(args, "sku_id"));
    const auto agg = s.reviews.aggregate(k, s.day, s.config.review_window);
    return {{"sku_id", s.catalog.sku(k).sku_id},
            {"count", agg.count},
            {"mean_all", agg.mean_all ? Json(*agg.mean_all) : Json(nullptr)},
            {"mean_recent", agg.mean_recent ? Json(*agg.mean_recent) : Json(nullptr)},
            {"window", s.config.review_window}};
}

Json view_sku_recent_reviews(const WorldState& s, const Json& args) {
    expect_keys(args, {"sku_id", "window"});
    const auto k = sku_index(s, req_id(args, "sku_id"));
    int window = s.config.review_window;
    if (auto it = args.find("window"); it != args.end()) {
        auto w = integer_value(*it);
        if (!w || *w < 1) fail(code::invalid_arguments, "window must be a positive integer");
        window = static_cast<int>(std::min<std::int64_t>(*w, 1'000'000));
    }
    Json list = Json::array();
    for (const auto& r : s.reviews.recent(k, s.day, window))
        list.push_back({{"day", r.day}, {"date", s.calendar.date_string(r.day)}, {"rating", r.rating}});
    return {{"sku_id", s.catalog.sku(k).sku_id}, {"window", window}, {"reviews", std::move(list)}};
}

Json view_current_date_supplier_prices(const WorldState& s, const Json& args) {
    expect_keys(args, {"sku_id"});
    std::optional<std::size_t> only;
    if (auto id = opt_id(args, "sku_id")) only = sku_index(s, *id);
    const auto quotes = current_quotes(s);
    Json skus = Json::array();
    for (std::size_t k = 0; k < s.sku_count(); ++k) {
        if (only && *only != k) continue;
        Json sups = Json::array();
        const auto& list = s.suppliers.of(k);
        for (std::size_t i = 0; i < list.size(); ++i)
            sups.push_back({{"supplier_id", list[i].supplier_id},
                            {"quality", list[i].quality},
                            {"price", quotes[k][i]},
                            {"lead_time_min", list[i].lead_time_min},
                            {"lead_time_max", list[i].lead_time_max}});
        skus.push_back({{"sku_id", s.catalog.sku(k).sku_id}, {"suppliers", std::move(sups)}});
    }
    return {{"day", s.day}, {"date", s.calendar.date_string(s.day)}, {"skus", std::move(skus)}};
}

Json view_current_orders(const WorldState& s) {
    Json list = Json::array();
    for (const auto& o : s.orders.pending_orders()) list.push_back(to_json(o));
    return {{"day", s.day}, {"orders", std::move(list)}};
}

Json view_today_news(const WorldState& s) {
    // Scope, side, sign and magnitude stay hidden; agents read the prose.
    Json list = Json::array();
    for (const auto& e : s.news)
        list.push_back({{"event_id", e.event_id}, {"text", e.text}, {"created_day", e.created_day}});
    return {{"day", s.day}, {"date", s.calendar.date_string(s.day)}, {"events", std::move(list)}};
}

Json memory_write(WorldState& s, const Json& args) {
    expect_keys(args, {"key", "text"});
    const auto key = req_id(args, "key");
    auto it = args.find("text");
    if (it == args.end() || !it->is_string()) fail(code::invalid_arguments, "'text' must be a string");
    s.memory[key] = it->get<std::string>();
    return {{"key", key}, {"stored", true}};
}

Json memory_read(const WorldState& s, const Json& args) {
    expect_keys(args, {"key"});
    if (auto key = opt_id(args, "key")) {
        auto it = s.memory.find(*key);
        if (it == s.memory.end()) fail(code::unknown_reference, fmt::format("no memory entry '{}'", *key));
        return {{"key", *key}, {"text", it->second}};
    }
    return {{"entries", s.memory}};
}

// ---- strategy tools ----

template <typename F>
auto parse_or_fail(F&& parse) {
    try {
        return parse();
    } catch (const ArgumentError& e) {
        fail(code::invalid_arguments, e.what());
    }
}

Json set_macro_strategy(WorldState& s, const Json& args) {
    expect_keys(args, {"macro_strategy"});
    auto it = args.find("macro_strategy");
    if (it == args.end()) fail(code::invalid_arguments, "missing argument 'macro_strategy'");
    s.draft.macro_strategy = parse_or_fail([&] { return parse_macro_strategy(*it); });
    return {{"macro_strategy", s.draft.macro_strategy}};
}

Json set_execute_strategy(WorldState& s, const Json& args) {
    expect_keys(args, {"execute_strategy"});
    auto it = args.find("execute_strategy");
    if (it == args.end()) fail(code::invalid_arguments, "missing argument 'execute_strategy'");
    auto parsed = parse_or_fail([&] { return parse_execute_strategy(*it); });
    if (!s.config.news.enabled && !parsed.news_to_monitor.empty())
        fail(code::invalid_arguments, "news_to_monitor must be empty while news is disabled");
    s.draft.execute_strategy = std::move(parsed);
    return {{"execute_strategy", to_json(s.draft.execute_strategy)}};
}

Json set_action(WorldState& s, const Json& args) {
    expect_keys(args, {"today_action"});
    auto it = args.find("today_action");
    if (it == args.end()) fail(code::invalid_arguments, "missing argument 'today_action'");
    s.draft.today_action = parse_or_fail([&] { return parse_today_action(*it); });
    return {{"today_action", to_json(s.draft.today_action)}};
}

Json finish_strategy_phase(WorldState& s, const Json& args) {
    expect_keys(args, {});
    s.draft.day = s.day;
    s.strategy = s.draft;
    s.phase = Phase::execution;
    return to_json(s.strategy);
}

// ---- execution tools ----

Json place_order(WorldState& s, const ToolCall& call, const std::vector<ActionFlag>& flags) {
    const auto sku_id = req_id(call.arguments, "sku_id");
    const auto supplier_id = req_id(call.arguments, "supplier_id");
    const auto quantity = *integer_value(call.arguments.at("quantity"));
    const auto k = *s.catalog.find(sku_id);
    const auto& list = s.suppliers.of(k);
    const auto pos = static_cast<std::size_t>(
        std::find_if(list.begin(), list.end(), [&](const Supplier& x) { return x.supplier_id == supplier_id; }) -
        list.begin());
    const Money unit = quote_price(list[pos], supply_multiplier(s.catalog, k, s.news));
    PurchaseOrder order;
    try {
        order = s.orders.place_order(s.catalog, s.suppliers, s.finance, sku_id, supplier_id, quantity, unit, s.day,
                                     s.rng.leadtime);
    } catch (const FundsError& e) {
        fail(code::insufficient_funds, e.what());
    }
    s.procurement_today += unit * quantity;
    s.placed_orders_today[k] += quantity;
    Json j = to_json(order);
    j["total_cost"] = unit * quantity;
    j["funds_after"] = s.finance.funds;
    Json f = Json::array();
    for (const auto& flag : flags) f.push_back(to_json(flag));
    j["flags"] = std::move(f);
    return j;
}

Json modify_sku_price(WorldState& s, const ToolCall& call, const std::vector<ActionFlag>& flags) {
    const auto k = *s.catalog.find(req_id(call.arguments, "sku_id"));
    const Money old_price = s.prices[k];
    s.prices[k] = Money::from_real(call.arguments.at("new_price").get<double>());
    Json f = Json::array();
    for (const auto& flag : flags) f.push_back(to_json(flag));
    return {{"sku_id", s.catalog.sku(k).sku_id},
            {"old_price", money_json(old_price)},
            {"new_price", money_json(s.prices[k])},
            {"flags", std::move(f)}};
}

const std::vector<ToolInfo> kTools{
    {"view_funds_and_date", ToolAccess::read, false},
    {"view_inventory", ToolAccess::read, false},
    {"view_sku_sales_history", ToolAccess::read, false},
    {"view_sku_avg_ratings", ToolAccess::read, false},
    {"view_sku_recent_reviews", ToolAccess::read, false},
    {"view_current_date_supplier_prices", ToolAccess::read, false},
    {"view_current_orders", ToolAccess::read, false},
    {"view_today_news", ToolAccess::read, false},
    {"memory_write", ToolAccess::read, true},
    {"memory_read", ToolAccess::read, false},
    {"set_macro_strategy", ToolAccess::strategy_only, true},
    {"set_execute_strategy", ToolAccess::strategy_only, true},
    {"set_action", ToolAccess::strategy_only, true},
    {"finish_strategy_phase", ToolAccess::strategy_only, true},
    {"place_order", ToolAccess::execution_only, true},
    {"modify_sku_price", ToolAccess::execution_only, true},
    {"end_today", ToolAccess::execution_only, true},
};

}  // namespace

const std::vector<std::string_view>& error_codes() {
    static const std::vector<std::string_view> codes{
        code::phase_gate,         code::unknown_tool, code::invalid_arguments, code::invalid_action,
        code::unknown_reference,  code::insufficient_funds, code::unavailable, code::budget_exceeded,
        code::episode_over,       code::protocol_error,
    };
    return codes;
}

std::string_view to_string(FlagKind kind) {
    switch (kind) {
    case FlagKind::price_out_of_range: return "price_out_of_range";
    case FlagKind::quantity_implausible: return "quantity_implausible";
    case FlagKind::unknown_sku: return "unknown_sku";
    case FlagKind::unknown_supplier: return "unknown_supplier";
    }
    return "?";
}

Json to_json(const ActionFlag& flag) { return {{"kind", to_string(flag.kind)}, {"detail", flag.detail}}; }

Json to_wire(const ToolResult& r, const Json& id) {
    Json j;
    j["id"] = id;
    j["ok"] = r.ok;
    if (r.ok) {
        j["result"] = r.result;
    } else {
        Json err{{"code", r.error->code}, {"message", r.error->message}};
        if (!r.flags.empty()) {
            Json f = Json::array();
            for (const auto& flag : r.flags) f.push_back(to_json(flag));
            err["flags"] = std::move(f);
        }
        j["error"] = std::move(err);
    }
    return j;
}

const std::vector<ToolInfo>& tool_catalog() { return kTools; }

const ToolInfo* find_tool(std::string_view name) {
    auto it = std::find_if(kTools.begin(), kTools.end(), [&](const ToolInfo& t) { return t.name == name; });
    return it == kTools.end() ? nullptr : &*it;
}

bool permitted(const ToolInfo& tool, Phase phase) {
    switch (tool.access) {
    case ToolAccess::read: return phase != Phase::ended;
    case ToolAccess::strategy_only: return phase == Phase::strategy;
    case ToolAccess::execution_only: return phase == Phase::execution;
    }
    return false;
}

std::vector<std::string> available_tools(Phase phase, bool news_enabled) {
    std::vector<std::string> out;
    for (const auto& t : kTools) {
        if (!permitted(t, phase)) continue;
        if (t.name == "view_today_news" && !news_enabled) continue;
        out.emplace_back(t.name);
    }
    return out;
}

std::optional<int> parse_day(const Json& value, const Calendar& calendar) {
    if (auto n = integer_value(value)) {
        if (*n < -1'000'000 || *n > 1'000'000) return std::nullopt;
        return static_cast<int>(*n);
    }
    if (value.is_string()) {
        const auto text = value.get<std::string>();
        if (auto date = Calendar::parse_date(text)) return calendar.day_of(*date);
        int n = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
        if (ec == std::errc{} && p == text.data() + text.size()) return n;
    }
    return std::nullopt;
}

Verdict validate_action(const ToolCall& call, const WorldState& s) {
    Verdict v;
    auto reject = [&](std::string_view c, std::string message) {
        v.accept = false;
        v.error = ToolError{std::string(c), std::move(message)};
        return v;
    };
    auto flag = [&](FlagKind kind, std::string detail) { v.flags.push_back({call.call_id, kind, std::move(detail)}); };
    const Json& args = call.arguments;
    if (!args.is_object()) return reject(code::invalid_arguments, "arguments must be an object");

    try {
        if (call.tool == "place_order") {
            expect_keys(args, {"sku_id", "supplier_id", "quantity"});
            const auto sku_id = req_id(args, "sku_id");
            const auto supplier_id = req_id(args, "supplier_id");
            auto q = args.find("quantity");
            if (q == args.end()) return reject(code::invalid_arguments, "missing argument 'quantity'");
            const auto quantity = integer_value(*q);
            if (!quantity) return reject(code::invalid_arguments, "quantity must be an integer");

            const auto k = s.catalog.find(sku_id);
            if (!k) {
                flag(FlagKind::unknown_sku, sku_id);
                return reject(code::invalid_action, fmt::format("unknown SKU '{}'", sku_id));
            }
            if (!s.suppliers.find(*k, supplier_id)) {
                flag(FlagKind::unknown_supplier, supplier_id);
                return reject(code::invalid_action, fmt::format("SKU {} has no supplier '{}'", sku_id, supplier_id));
            }
            const auto cap = s.inventory.capacity();
            if (*quantity <= 0) return reject(code::invalid_action, "quantity must be positive");
            if (*quantity > cap)
                return reject(code::invalid_action,
                              fmt::format("quantity {} exceeds the inventory capacity {}", *quantity, cap));
            if (static_cast<double>(*quantity) > s.config.validator.quantity_flag_fraction * static_cast<double>(cap))
                flag(FlagKind::quantity_implausible, fmt::format("quantity {} against capacity {}", *quantity, cap));
        } else if (call.tool == "modify_sku_price") {
            expect_keys(args, {"sku_id", "new_price"});
            const auto sku_id = req_id(args, "sku_id");
            auto p = args.find("new_price");
            if (p == args.end()) return reject(code::invalid_arguments, "missing argument 'new_price'");
            if (!p->is_number()) return reject(code::invalid_arguments, "new_price must be a number");
            const double price = p->get<double>();
            if (!s.catalog.find(sku_id)) {
                flag(FlagKind::unknown_sku, sku_id);
                return reject(code::invalid_action, fmt::format("unknown SKU '{}'", sku_id));
            }
            if (!std::isfinite(price) || price > 1e12)
                return reject(code::invalid_action, "new_price is not a finite currency amount");
            if (Money::from_real(price).cents() <= 0)
                return reject(code::invalid_action, fmt::format("price {} is not positive", price));
            if (price > s.config.validator.price_flag_threshold)
                flag(FlagKind::price_out_of_range,
                     fmt::format("price {} above {}", price, s.config.validator.price_flag_threshold));
        } else {
            return reject(code::invalid_arguments, fmt::format("{} is not a validated action", call.tool));
        }
    } catch (const ToolFailure& f) {
        return reject(f.code, f.message);
    }
    return v;
}

ToolResult dispatch(const ToolCall& call, WorldState& s, std::optional<DayReport>* report_out) {
    ToolResult r;
    r.call_id = call.call_id;
    auto error = [&](std::string_view c, std::string message) {
        r.ok = false;
        r.error = ToolError{std::string(c), std::move(message)};
        spdlog::debug("call {} {} failed: {} ({})", call.call_id, call.tool, r.error->code, r.error->message);
        return r;
    };

    if (s.over()) return error(code::episode_over, fmt::format("the episode ended ({})", s.end_reason));
    const ToolInfo* tool = find_tool(call.tool);
    if (!tool) return error(code::unknown_tool, fmt::format("unknown tool '{}'", call.tool));
    if (!permitted(*tool, s.phase))
        return error(code::phase_gate,
                     fmt::format("{} cannot be called during the {} phase", call.tool, to_string(s.phase)));
    if (call.tool == "view_today_news" && !s.config.news.enabled)
        return error(code::unavailable, "news is disabled in this environment");
    if (!call.arguments.is_object()) return error(code::invalid_arguments, "arguments must be an object");

    try {
        const auto& name = call.tool;
        const auto& a = call.arguments;
        if (name == "place_order" || name == "modify_sku_price") {
            auto verdict = validate_action(call, s);
            r.flags = verdict.flags;
            for (const auto& f : verdict.flags)
                spdlog::info("call {} flagged {}: {}", call.call_id, to_string(f.kind), f.detail);
            if (!verdict.accept) return error(verdict.error->code, verdict.error->message);
            r.result = name == "place_order" ? place_order(s, call, r.flags) : modify_sku_price(s, call, r.flags);
        } else if (name == "end_today") {
            expect_keys(a, {});
            auto report = end_of_day_transition(s);
            r.result = to_json(report);
            if (report_out) *report_out = std::move(report);
        } else if (name == "view_funds_and_date") {
            expect_keys(a, {});
            r.result = view_funds_and_date(s);
        } else if (name == "view_inventory") {
            expect_keys(a, {});
            r.result = view_inventory(s);
        } else if (name == "view_sku_sales_history") {
            r.result = view_sku_sales_history(s, a);
        } else if (name == "view_sku_avg_ratings") {
            r.result = view_sku_avg_ratings(s, a);
        } else if (name == "view_sku_recent_reviews") {
            r.result = view_sku_recent_reviews(s, a);
        } else if (name == "view_current_date_supplier_prices") {
            r.result = view_current_date_supplier_prices(s, a);
        } else if (name == "view_current_orders") {
            expect_keys(a, {});
            r.result = view_current_orders(s);
        } else if (name == "view_today_news") {
            expect_keys(a, {});
            r.result = view_today_news(s);
        } else if (name == "memory_write") {
            r.result = memory_write(s, a);
        } else if (name == "memory_read") {
            r.result = memory_read(s, a);
        } else if (name == "set_macro_strategy") {
            r.result = set_macro_strategy(s, a);
        } else if (name == "set_execute_strategy") {
            r.result = set_execute_strategy(s, a);
        } else if (name == "set_action") {
            r.result = set_action(s, a);
        } else if (name == "finish_strategy_phase") {
            r.result = finish_strategy_phase(s, a);
        }
    } catch (const ToolFailure& f) {
        return error(f.code, f.message);
    }
    r.ok = true;
    return r;
}

}  // namespace retail

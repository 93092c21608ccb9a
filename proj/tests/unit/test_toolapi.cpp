#include <doctest.h>

#include "../support.hpp"
#include "retail/session.hpp"
#include "retail/toolapi.hpp"

using namespace retail;

namespace {

struct Fixture {
    WorldState s;
    std::int64_t id = 1;

    explicit Fixture(EpisodeConfig cfg = testing::easy()) : s(init_episode(cfg, 42)) {}

    ToolResult call(const std::string& tool, Json args = Json::object()) {
        return dispatch(ToolCall{id++, tool, std::move(args)}, s);
    }
    std::string sku(std::size_t j = 0) const { return s.catalog.sku(j).sku_id; }
    std::string supplier(std::size_t j = 0, std::size_t k = 0) const { return s.suppliers.of(j)[k].supplier_id; }
    void to_execution() { REQUIRE(call("finish_strategy_phase").ok); }
    Json order(std::int64_t qty, std::size_t j = 0) {
        return {{"sku_id", sku(j)}, {"supplier_id", supplier(j)}, {"quantity", qty}};
    }
};

std::string code_of(const ToolResult& r) { return r.error ? r.error->code : "ok"; }

}  // namespace

TEST_SUITE("toolapi") {

TEST_CASE("tool catalog and phase table") {
    CHECK(tool_catalog().size() == 17);
    const auto strat = available_tools(Phase::strategy, false);
    const auto exec = available_tools(Phase::execution, true);
    CHECK(std::find(strat.begin(), strat.end(), "place_order") == strat.end());
    CHECK(std::find(strat.begin(), strat.end(), "set_action") != strat.end());
    CHECK(std::find(strat.begin(), strat.end(), "view_today_news") == strat.end());
    CHECK(std::find(exec.begin(), exec.end(), "view_today_news") != exec.end());
    CHECK(std::find(exec.begin(), exec.end(), "set_macro_strategy") == exec.end());
    CHECK(std::find(exec.begin(), exec.end(), "memory_write") != exec.end());
    CHECK(available_tools(Phase::ended, true).empty());
    CHECK(error_codes().size() == 10);
}

TEST_CASE("mutating calls are gated by phase") {
    Fixture f;
    const auto d = state_digest(f.s);
    auto r = f.call("place_order", f.order(10));
    CHECK(code_of(r) == "phase_gate");
    CHECK(f.call("modify_sku_price", {{"sku_id", f.sku()}, {"new_price", 3.0}}).error->code == "phase_gate");
    CHECK(f.call("end_today").error->code == "phase_gate");
    CHECK(state_digest(f.s) == d);

    f.to_execution();
    CHECK(code_of(f.call("set_macro_strategy", {{"macro_strategy", {"x"}}})) == "phase_gate");
    CHECK(code_of(f.call("finish_strategy_phase")) == "phase_gate");
    CHECK(code_of(f.call("set_action", {{"today_action", Json::array()}})) == "phase_gate");
}

TEST_CASE("unknown tools and bad arguments") {
    Fixture f;
    CHECK(code_of(f.call("sell_everything")) == "unknown_tool");
    CHECK(code_of(dispatch(ToolCall{1, "view_inventory", Json::array()}, f.s)) == "invalid_arguments");
    CHECK(code_of(f.call("view_inventory", {{"verbose", true}})) == "invalid_arguments");
    CHECK(code_of(f.call("set_macro_strategy", {{"macro_strategy", 3}})) == "invalid_arguments");
    CHECK(code_of(f.call("set_execute_strategy", {{"execute_strategy", {{"focus", Json::array()}}}})) ==
          "invalid_arguments");
    CHECK(code_of(f.call("view_today_news")) == "unavailable");
}

TEST_CASE("funds and date on a fresh episode") {
    Fixture f;
    const auto r = f.call("view_funds_and_date");
    REQUIRE(r.ok);
    CHECK(r.result["funds"].get<double>() == 10000.0);
    CHECK(r.result["day"] == 1);
    CHECK(r.result["date"] == "1991-09-07");
    CHECK(r.result["weekday"] == "Saturday");
    CHECK(r.result["phase"] == "strategy");
}

TEST_CASE("validator hard rejects") {
    Fixture f;
    f.to_execution();
    const auto d = state_digest(f.s);
    for (double p : {0.0, -1.0, 0.004}) {
        const auto r = f.call("modify_sku_price", {{"sku_id", f.sku()}, {"new_price", p}});
        CHECK(code_of(r) == "invalid_action");
    }
    CHECK(code_of(f.call("modify_sku_price", {{"sku_id", f.sku()}, {"new_price", "cheap"}})) == "invalid_arguments");
    CHECK(code_of(f.call("place_order", f.order(0))) == "invalid_action");
    CHECK(code_of(f.call("place_order", f.order(-5))) == "invalid_action");
    CHECK(code_of(f.call("place_order", f.order(10001))) == "invalid_action");
    Json frac = f.order(1);
    frac["quantity"] = 2.5;
    CHECK(code_of(f.call("place_order", frac)) == "invalid_arguments");

    Json ghost = f.order(5);
    ghost["sku_id"] = "440004627";
    const auto r = f.call("place_order", ghost);
    CHECK(code_of(r) == "invalid_action");
    REQUIRE(r.flags.size() == 1);
    CHECK(r.flags[0].kind == FlagKind::unknown_sku);
    Json wrong = f.order(5);
    wrong["supplier_id"] = "supplier_Q";
    CHECK(f.call("place_order", wrong).flags.at(0).kind == FlagKind::unknown_supplier);
    CHECK(state_digest(f.s) == d);
}

TEST_CASE("validator flags accepted anomalies") {
    Fixture f;
    f.to_execution();
    auto r = f.call("modify_sku_price", {{"sku_id", f.sku()}, {"new_price", 999.0}});
    REQUIRE(r.ok);
    REQUIRE(r.flags.size() == 1);
    CHECK(r.flags[0].kind == FlagKind::price_out_of_range);
    CHECK(f.s.prices[0] == Money::from_real(999.0));
    CHECK(r.result["old_price"].get<double>() == f.s.catalog.sku(0).base_price.to_real());

    r = f.call("modify_sku_price", {{"sku_id", f.sku()}, {"new_price", 50.0}});
    CHECK(r.flags.empty());

    auto lean = testing::easy();
    lean.initial_funds = Money::from_real(100);
    Fixture poor(lean);
    poor.to_execution();
    r = poor.call("place_order", poor.order(2501));
    CHECK(code_of(r) == "insufficient_funds");
    CHECK(r.flags.at(0).kind == FlagKind::quantity_implausible);
    CHECK(validate_action(ToolCall{99, "place_order", f.order(2500)}, f.s).flags.empty());
    CHECK(validate_action(ToolCall{99, "place_order", f.order(2501)}, f.s).accept);
}

TEST_CASE("quantity flag under a 40,000 capacity") {
    auto cfg = preset_config("middle");
    cfg.initial_funds = Money::from_real(1e7);
    Fixture f(cfg);
    f.to_execution();
    const auto r = f.call("place_order", f.order(18000));
    REQUIRE(r.ok);
    CHECK(r.flags.at(0).kind == FlagKind::quantity_implausible);
    CHECK(code_of(f.call("place_order", f.order(40001))) == "invalid_action");
    CHECK(f.call("place_order", f.order(10000)).flags.empty());
}

TEST_CASE("place_order debits the quoted price") {
    Fixture f;
    f.to_execution();
    const auto before = f.s.finance.funds;
    const auto r = f.call("place_order", f.order(10));
    REQUIRE(r.ok);
    const Money unit = f.s.suppliers.of(0)[0].base_cost;
    CHECK(f.s.finance.funds == before - unit * 10);
    CHECK(r.result["total_cost"].get<Money>() == unit * 10);
    CHECK(r.result["status"] == "pending");
    CHECK(f.s.procurement_today == unit * 10);
    const auto orders = f.call("view_current_orders");
    CHECK(orders.result["orders"].size() == 1);
}

TEST_CASE("sales history clipping and lookups") {
    Fixture f;
    f.to_execution();
    f.s.prices[0] = Money::from_real(1.99);
    REQUIRE(f.call("end_today").ok);
    f.s.sales_history[0].back().units = 7;

    auto r = f.call("view_sku_sales_history", {{"sku_id", f.sku()}, {"start_day", -10}, {"end_day", 0}});
    REQUIRE(r.ok);
    CHECK(r.result["records"].empty());
    r = f.call("view_sku_sales_history", {{"sku_id", f.sku()}});
    REQUIRE(r.result["records"].size() == 1);
    CHECK(r.result["records"][0]["units"] == 7);
    CHECK(r.result["records"][0]["price"].dump() == "1.99");
    CHECK(r.result["records"][0]["day"] == 1);
    r = f.call("view_sku_sales_history", {{"sku_id", f.sku()}, {"start_day", "09/07/91"}, {"end_day", "1991-09-07"}});
    CHECK(r.result["records"].size() == 1);
    CHECK(code_of(f.call("view_sku_sales_history", {{"sku_id", "440004627"}})) == "unknown_reference");
    CHECK(code_of(f.call("view_sku_sales_history", {{"sku_id", f.sku()}, {"start_day", 5}, {"end_day", 2}})) ==
          "invalid_arguments");
}

TEST_CASE("strategy tools edit the draft and snapshot at finish") {
    Fixture f;
    const Json exec{{"focus_skus", {f.sku(0), f.sku(1)}},
                    {"sku_supplier_mapping", {{{"sku_id", f.sku(0)}, {"supplier_id", f.supplier(0)}}}}};
    REQUIRE(f.call("set_macro_strategy", {{"macro_strategy", {"lean stock", "steady prices"}}}).ok);
    REQUIRE(f.call("set_execute_strategy", {{"execute_strategy", exec}}).ok);
    const Json actions = Json::array({{{"tool", "place_order"}, {"arguments", f.order(5)}}});
    REQUIRE(f.call("set_action", {{"today_action", actions}}).ok);
    CHECK(f.s.strategy.macro_strategy.empty());
    f.to_execution();
    CHECK(f.s.strategy.macro_strategy.size() == 2);
    CHECK(f.s.strategy.day == 1);
    CHECK(to_json(f.s.strategy.today_action) == actions);
    CHECK(f.s.strategy.execute_strategy.focus_skus.size() == 2);
}

TEST_CASE("news tool hides event internals") {
    Fixture f(preset_config("hard"));
    f.to_execution();
    const auto r = f.call("view_today_news");
    REQUIRE(r.ok);
    REQUIRE(r.result["events"].size() == 20);
    for (const auto& e : r.result["events"]) {
        CHECK(e.size() == 3);
        CHECK(e.contains("text"));
        CHECK_FALSE(e.contains("magnitude"));
    }
    CHECK(code_of(f.call("set_execute_strategy", {{"execute_strategy", {{"news_to_monitor", {"x"}}}}})) ==
          "phase_gate");
}

TEST_CASE("news_to_monitor requires news") {
    Fixture f;
    CHECK(code_of(f.call("set_execute_strategy", {{"execute_strategy", {{"news_to_monitor", {"x"}}}}})) ==
          "invalid_arguments");
}

TEST_CASE("memory persists across days") {
    Fixture f;
    REQUIRE(f.call("memory_write", {{"key", "plan"}, {"text", "restock beer"}}).ok);
    f.to_execution();
    REQUIRE(f.call("end_today").ok);
    const auto r = f.call("memory_read", {{"key", "plan"}});
    CHECK(r.result["text"] == "restock beer");
    CHECK(code_of(f.call("memory_read", {{"key", "nope"}})) == "unknown_reference");
}

TEST_CASE("calls after the end report episode_over") {
    Fixture f(testing::easy(1));
    f.to_execution();
    REQUIRE(f.call("end_today").ok);
    CHECK(code_of(f.call("view_inventory")) == "episode_over");
}

TEST_CASE("wire form") {
    ToolResult ok{3, true, Json{{"a", 1}}, std::nullopt, {}};
    CHECK(to_wire(ok, 7).dump() == R"({"id":7,"ok":true,"result":{"a":1}})");
    ToolResult bad{4, false, nullptr, ToolError{"phase_gate", "no"}, {}};
    CHECK(to_wire(bad, "x").dump() == R"({"id":"x","ok":false,"error":{"code":"phase_gate","message":"no"}})");
}

TEST_CASE("day parsing") {
    Calendar cal;
    CHECK(parse_day(Json(4), cal) == 4);
    CHECK(parse_day(Json("12"), cal) == 12);
    CHECK(parse_day(Json("09/10/91"), cal) == 4);
    CHECK_FALSE(parse_day(Json("soon"), cal));
    CHECK_FALSE(parse_day(Json(1.5), cal));
}

}

TEST_SUITE("session") {

TEST_CASE("call ids, logging and records") {
    testing::RecordLog log;
    Session s(testing::easy(3), 42);
    log.attach(s);
    CHECK(s.call("view_inventory").call_id == 1);
    s.call("place_order", Json::object());
    s.call("finish_strategy_phase");
    s.call("end_today");
    REQUIRE(log.records.size() == 1);
    const auto& calls = log.records[0]["tool_calls"];
    REQUIRE(calls.size() == 4);
    CHECK(calls[1]["error"]["code"] == "phase_gate");
    CHECK(calls[3]["phase"] == "execution");
    CHECK(log.records[0]["day"] == 1);
    CHECK(s.pending_log().empty());
    CHECK(s.call("view_inventory").call_id == 5);
}

TEST_CASE("budget overrun force-closes the phase") {
    auto cfg = testing::easy(3);
    cfg.call_budget = 3;
    testing::RecordLog log;
    Session s(cfg, 42);
    log.attach(s);
    for (int i = 0; i < 3; ++i) CHECK(s.call("view_inventory").ok);
    const auto r = s.call("view_inventory");
    CHECK(r.error->code == "budget_exceeded");
    CHECK(s.phase() == Phase::execution);
    CHECK(s.calls_in_phase() == 0);
    const auto& entries = s.pending_log();
    REQUIRE(entries.size() == 5);
    CHECK(entries[4].automatic);
    CHECK(entries[4].tool == "finish_strategy_phase");
}

TEST_CASE("close_phase is logged as automatic") {
    testing::RecordLog log;
    Session s(testing::easy(2), 42);
    log.attach(s);
    s.close_phase();
    s.close_phase();
    REQUIRE(log.records.size() == 1);
    CHECK(log.records[0]["tool_calls"][0]["auto"] == true);
    s.close_phase();
    s.close_phase();
    CHECK(s.over());
    s.close_phase();
    CHECK(s.days_completed() == 2);
    CHECK(s.call("view_inventory").error->code == "episode_over");
}

}

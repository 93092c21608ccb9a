#include <doctest.h>

#include <cmath>

#include "../support.hpp"
#include "retail/errors.hpp"
#include "retail/policy.hpp"

using namespace retail;

namespace {

// Base-stock target computed from the planned prices.
std::vector<std::int64_t> oracle_targets(const WorldState& s, const std::vector<Money>& prices, double cover) {
    const auto& d = s.catalog.demand();
    const std::size_t n = s.sku_count();
    std::vector<double> base(n);
    for (std::size_t j = 0; j < n; ++j)
        base[j] = d.alpha[j] + d.beta[j] * prices[j].to_real() + d.category_effect[s.catalog.category_of(j)];
    double denom = 1.0;
    std::vector<double> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        double u = base[j];
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) u += d.gamma_at(j, i) * std::exp(base[i]);
        e[j] = std::exp(u);
        denom += e[j];
    }
    const double traffic = std::lround(s.config.traffic.base * s.config.traffic.mean_factor());
    std::vector<std::int64_t> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<std::int64_t>(std::ceil(traffic * e[j] / denom * cover - 1e-9));
    return out;
}

std::int64_t planned_qty(const HeuristicAgent::Plan& p, const std::string& sku) {
    for (const auto& a : p.actions)
        if (a.tool == "place_order" && a.arguments["sku_id"] == sku) return a.arguments["quantity"].get<std::int64_t>();
    return 0;
}

Script script_of(const std::string& text) { return parse_script(Json::parse(text)); }

}  // namespace

TEST_SUITE("policy") {

TEST_CASE("null agent ends every phase and lasts 45 days") {
    Session s(testing::easy(), 42);
    NullAgent agent;
    CHECK(run_episode(agent, s) == 45);
    CHECK(s.end_reason() == "unpaid_rent");
    CHECK(s.reports()[39].rent.paid);
    CHECK_FALSE(s.reports()[40].rent.paid);
    CHECK(s.reports().back().funds_end == Money{});
}

TEST_CASE("strategy inherits when nothing is set") {
    Session s(testing::easy(), 42);
    s.call("set_macro_strategy", {{"macro_strategy", {"stay lean"}}});
    s.call("set_action", {{"today_action", Json::array()}});
    s.call("finish_strategy_phase");
    s.call("end_today");
    s.call("finish_strategy_phase");
    const auto& st = s.state().strategy;
    CHECK(st.macro_strategy == std::vector<std::string>{"stay lean"});
    CHECK(st.day == 2);
}

TEST_CASE("set_action snapshot and immutability") {
    Session s(testing::easy(), 42);
    const Json actions = Json::array({{{"tool", "modify_sku_price"},
                                       {"arguments", {{"sku_id", s.state().catalog.sku(0).sku_id}, {"new_price", 2.5}}}}});
    s.call("set_action", {{"today_action", actions}});
    s.call("finish_strategy_phase");
    CHECK(to_json(s.state().strategy.today_action) == actions);
    const auto before = to_json(s.state().strategy);
    CHECK(s.call("set_macro_strategy", {{"macro_strategy", {"x"}}}).error->code == "phase_gate");
    CHECK(to_json(s.state().strategy) == before);
}

TEST_CASE("harness closes phases left open") {
    struct Idle final : Agent {
        void strategy_phase(Session& s) override { s.call("view_inventory"); }
        void execution_phase(const StrategyRecord&, Session&) override {}
    } idle;
    testing::RecordLog log;
    Session s(testing::easy(2), 42);
    log.attach(s);
    CHECK(run_episode(idle, s) == 2);
    const auto& calls = log.records[0]["tool_calls"];
    REQUIRE(calls.size() == 3);
    CHECK(calls[1]["auto"] == true);
    CHECK(calls[2]["tool"] == "end_today");
    CHECK(calls[2]["auto"] == true);
}

TEST_CASE("empty script behaves like the null agent") {
    Session a(testing::easy(), 42), b(testing::easy(), 42);
    ScriptedAgent scripted(Script{});
    NullAgent null;
    CHECK(run_episode(scripted, a) == run_episode(null, b));
    CHECK(state_digest(a.state()) == state_digest(b.state()));
}

TEST_CASE("script placing one order") {
    Session probe(testing::easy(), 42);
    const auto sku = probe.state().catalog.sku(2).sku_id;
    const auto sup = probe.state().suppliers.of(2)[1].supplier_id;
    const auto script = script_of(R"({"days": [{"day": 1, "execution": [{"tool": "place_order", "arguments":
        {"sku_id": ")" + sku + R"(", "supplier_id": ")" + sup + R"(", "quantity": 12}}]}]})");
    Session s(testing::easy(3), 42);
    ScriptedAgent agent(script);
    run_episode(agent, s);
    REQUIRE(s.state().orders.orders().size() == 1);
    CHECK(s.state().orders.orders()[0].quantity == 12);
    CHECK(s.state().orders.orders()[0].supplier_id == sup);
    CHECK(to_json(script) == to_json(parse_script(to_json(script))));
}

TEST_CASE("scripted runs are reproducible") {
    const auto script = script_of(R"({"days": [{"day": 2, "strategy": [{"tool": "memory_write",
        "arguments": {"key": "a", "text": "b"}}]}]})");
    auto run = [&] {
        testing::RecordLog log;
        Session s(testing::easy(5), 42);
        log.attach(s);
        ScriptedAgent agent(script);
        run_episode(agent, s);
        std::string out;
        for (const auto& r : log.records) out += r.dump() + "\n";
        return out;
    };
    CHECK(run() == run());
}

TEST_CASE("script schema errors") {
    CHECK_THROWS_AS(script_of(R"({"day": 1})"), SchemaError);
    CHECK_THROWS_AS(script_of(R"({"days": [{"strategy": []}]})"), SchemaError);
    CHECK_THROWS_AS(script_of(R"({"days": [{"day": 1, "strategy": [{"arguments": {}}]}]})"), SchemaError);
    CHECK_THROWS_AS(script_of(R"({"days": [{"day": 1}, {"day": 1}]})"), SchemaError);
    CHECK_THROWS_AS(make_agent("clever", testing::easy()), ArgumentError);
}

TEST_CASE("heuristic orders the shortfall to its target") {
    auto cfg = testing::easy();
    cfg.initial_funds = Money::from_real(1e6);
    const auto s = init_episode(cfg, 42);
    HeuristicAgent agent(cfg.heuristic);
    const auto p = agent.plan(s);
    const auto targets = oracle_targets(s, p.prices, cfg.heuristic.cover_days);
    for (std::size_t j = 0; j < s.sku_count(); ++j) {
        CHECK(planned_qty(p, s.catalog.sku(j).sku_id) == targets[j]);
        const double ref = s.catalog.sku(j).reference_cost.to_real() * cfg.heuristic.markup;
        CHECK(p.prices[j] == Money::from_real(std::clamp(ref, cfg.heuristic.price_floor, cfg.heuristic.price_cap)));
    }
    CHECK(p.execute.sku_supplier_mapping.size() == s.sku_count());
}

TEST_CASE("heuristic skips SKUs stocked above target") {
    auto cfg = testing::easy();
    auto s = init_episode(cfg, 42);
    std::vector<Delivery> in{{1, 0, 1000, {}, 1.0, "x"}};
    s.inventory.add_arrivals(in, 1);
    HeuristicAgent agent(cfg.heuristic);
    const auto p = agent.plan(s);
    CHECK(planned_qty(p, s.catalog.sku(0).sku_id) == 0);
    CHECK(planned_qty(p, s.catalog.sku(1).sku_id) > 0);
}

TEST_CASE("heuristic scales orders to the funds it may spend") {
    auto cfg = testing::easy();
    cfg.initial_funds = Money::from_real(2500);
    const auto s = init_episode(cfg, 42);
    HeuristicAgent agent(cfg.heuristic);
    const auto p = agent.plan(s);
    const auto quotes = current_quotes(s);
    Money spend;
    for (const auto& a : p.actions) {
        if (a.tool != "place_order") continue;
        const auto j = *s.catalog.find(a.arguments["sku_id"].get<std::string>());
        for (std::size_t k = 0; k < 5; ++k)
            if (s.suppliers.of(j)[k].supplier_id == a.arguments["supplier_id"])
                spend += quotes[j][k] * a.arguments["quantity"].get<std::int64_t>();
    }
    CHECK(spend.to_real() <= 2500 - 8 * 250);
    CHECK(spend > Money{});
}

TEST_CASE("heuristic run keeps its strategy stable") {
    testing::RecordLog log;
    Session s(testing::easy(20), 43);
    log.attach(s);
    auto agent = make_agent("heuristic", testing::easy(20));
    CHECK(run_episode(*agent, s) == 20);
    for (const auto& r : log.records) {
        CHECK(r["strategy"]["macro_strategy"].size() == 4);
        for (const auto& c : r["tool_calls"]) CHECK(c["ok"] == true);
    }
}

}

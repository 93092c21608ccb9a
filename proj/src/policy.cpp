#include "retail/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "retail/demand.hpp"
#include "retail/errors.hpp"

namespace retail {

namespace {

void issue(Session& session, const std::vector<ScriptedCall>& calls) {
    for (const auto& c : calls) {
        if (session.over()) return;
        session.call(c.tool, c.arguments);
    }
}

std::vector<ScriptedCall> parse_calls(const Json& j, std::string_view where) {
    if (!j.is_array()) throw SchemaError(fmt::format("script {} must be an array", where));
    std::vector<ScriptedCall> out;
    for (const auto& c : j) {
        if (!c.is_object() || !c.contains("tool") || !c["tool"].is_string())
            throw SchemaError(fmt::format("script {} entries need a string 'tool'", where));
        ScriptedCall call{c["tool"].get<std::string>(), c.value("arguments", Json::object())};
        out.push_back(std::move(call));
    }
    return out;
}

Json calls_json(const std::vector<ScriptedCall>& calls) {
    Json arr = Json::array();
    for (const auto& c : calls) arr.push_back({{"tool", c.tool}, {"arguments", c.arguments}});
    return arr;
}

}  // namespace

void NullAgent::strategy_phase(Session& session) { session.call("finish_strategy_phase"); }

void NullAgent::execution_phase(const StrategyRecord&, Session& session) { session.call("end_today"); }

Script parse_script(const Json& j) {
    if (!j.is_object() || !j.contains("days") || !j["days"].is_array())
        throw SchemaError("script must be an object with a 'days' array");
    Script script;
    for (const auto& d : j["days"]) {
        if (!d.is_object() || !d.contains("day") || !d["day"].is_number_integer())
            throw SchemaError("script days need an integer 'day'");
        const int day = d["day"].get<int>();
        DayScript ds;
        if (d.contains("strategy")) ds.strategy = parse_calls(d["strategy"], "strategy calls");
        if (d.contains("execution")) ds.execution = parse_calls(d["execution"], "execution calls");
        if (!script.emplace(day, std::move(ds)).second) throw SchemaError(fmt::format("day {} scripted twice", day));
    }
    return script;
}

Script load_script(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open script {}", path.string()));
    try {
        return parse_script(Json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

Json to_json(const Script& script) {
    Json days = Json::array();
    for (const auto& [day, ds] : script)
        days.push_back({{"day", day}, {"strategy", calls_json(ds.strategy)}, {"execution", calls_json(ds.execution)}});
    return {{"days", std::move(days)}};
}

void ScriptedAgent::strategy_phase(Session& session) {
    const int day = session.day();
    if (auto it = script_.find(day); it != script_.end()) issue(session, it->second.strategy);
    if (session.day() == day && session.phase() == Phase::strategy) session.call("finish_strategy_phase");
}

void ScriptedAgent::execution_phase(const StrategyRecord&, Session& session) {
    const int day = session.day();
    if (auto it = script_.find(day); it != script_.end()) issue(session, it->second.execution);
    if (session.day() == day && session.phase() == Phase::execution) session.call("end_today");
}

HeuristicAgent::Plan HeuristicAgent::plan(const WorldState& s) const {
    const std::size_t n = s.sku_count();
    Plan p;
    p.prices = s.prices;

    std::vector<PlannedAction> price_actions;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& sku = s.catalog.sku(j);
        const double raw = sku.reference_cost.to_real() * config_.markup;
        const Money target = Money::from_real(std::clamp(raw, config_.price_floor, config_.price_cap));
        if (target == s.prices[j]) continue;
        p.prices[j] = target;
        price_actions.push_back({"modify_sku_price", {{"sku_id", sku.sku_id}, {"new_price", target.to_real()}}});
        p.execute.price_adjustments.push_back({sku.sku_id, fmt::format("set to {}", target.str())});
    }

    const auto probs = choice_probabilities(compute_utilities(s.catalog, p.prices, review_deltas(s), news_deltas(s)));
    const double traffic = mean_daily_traffic(s.config.traffic);
    const auto quotes = current_quotes(s);

    std::vector<std::int64_t> qty(n, 0);
    std::vector<std::size_t> choice(n, 0);
    std::vector<Money> unit(n);
    double total_cost = 0.0;
    std::int64_t total_units = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& sku = s.catalog.sku(j);
        const auto& sups = s.suppliers.of(j);
        double best = -1e300;
        for (std::size_t k = 0; k < sups.size(); ++k) {
            const double score = sups[k].quality - config_.quality_cost_tradeoff * quotes[j][k].to_real() /
                                                       sku.base_price.to_real();
            if (score > best) {
                best = score;
                choice[j] = k;
            }
        }
        unit[j] = quotes[j][choice[j]];
        p.execute.sku_supplier_mapping.push_back({sku.sku_id, sups[choice[j]].supplier_id});

        const double expected = traffic * probs.sku[j];
        const auto target = static_cast<std::int64_t>(std::ceil(expected * config_.cover_days - 1e-9));
        const std::int64_t position =
            s.inventory.on_hand(j) + s.inventory.pending_units(j) + s.orders.units_on_order(j);
        qty[j] = std::max<std::int64_t>(0, target - position);
        total_cost += static_cast<double>(unit[j].cents()) * static_cast<double>(qty[j]);
        total_units += qty[j];
        if (static_cast<double>(s.inventory.sellable(j, s.day)) < expected * 3.0)
            p.execute.sku_to_monitor.push_back(sku.sku_id);
    }

    // Scale every order by the same factor when funds or space run short.
    const double budget = static_cast<double>(s.finance.funds.cents()) -
                          config_.rent_reserve_days * static_cast<double>(s.config.daily_rent.cents());
    const std::int64_t room = s.inventory.capacity() - s.inventory.total_on_hand() - s.inventory.pending_total() -
                              s.orders.units_on_order_total();
    double factor = 1.0;
    if (total_cost > 0.0 && total_cost > budget) factor = std::max(0.0, budget / total_cost);
    if (total_units > 0 && static_cast<double>(total_units) * factor > static_cast<double>(room))
        factor = std::max(0.0, static_cast<double>(room) / static_cast<double>(total_units));
    if (factor < 1.0)
        for (auto& q : qty) q = static_cast<std::int64_t>(std::floor(static_cast<double>(q) * factor));

    for (std::size_t j = 0; j < n; ++j) {
        if (qty[j] <= 0) continue;
        const auto& sku = s.catalog.sku(j);
        p.execute.focus_skus.push_back(sku.sku_id);
        p.execute.skus_to_reorder.push_back(sku.sku_id);
        p.actions.push_back({"place_order",
                             {{"sku_id", sku.sku_id},
                              {"supplier_id", s.suppliers.of(j)[choice[j]].supplier_id},
                              {"quantity", qty[j]}}});
    }
    p.actions.insert(p.actions.end(), price_actions.begin(), price_actions.end());

    if (s.config.news.enabled)
        for (const auto& e : s.news)
            if (e.scope != NewsScope::neutral) p.execute.news_to_monitor.push_back(e.text);
    return p;
}

void HeuristicAgent::strategy_phase(Session& session) {
    const auto& s = session.state();
    const auto p = plan(s);
    if (s.draft.macro_strategy.empty()) {
        session.call("set_macro_strategy",
                     {{"macro_strategy",
                       {"Keep every SKU stocked to cover the longest lead time plus a review period.",
                        "Buy from the supplier with the best quality for its cost.",
                        fmt::format("Price at {} times the reference cost and hold it.", config_.markup),
                        "Keep enough cash back to pay the rent."}}});
    }
    session.call("set_execute_strategy", {{"execute_strategy", to_json(p.execute)}});
    session.call("set_action", {{"today_action", to_json(p.actions)}});
    session.call("finish_strategy_phase");
}

void HeuristicAgent::execution_phase(const StrategyRecord& strategy, Session& session) {
    for (const auto& a : strategy.today_action) {
        auto r = session.call(a.tool, a.arguments);
        if (!r.ok) spdlog::warn("heuristic action {} rejected: {}", a.tool, r.error->message);
    }
    session.call("end_today");
}

bool run_day(Agent& agent, Session& session) {
    if (session.over()) return false;
    const int day = session.day();
    if (session.phase() == Phase::strategy) {
        agent.strategy_phase(session);
        if (session.day() == day && session.phase() == Phase::strategy) session.close_phase();
    }
    if (session.day() == day && session.phase() == Phase::execution) {
        const StrategyRecord snapshot = session.state().strategy;
        agent.execution_phase(snapshot, session);
        if (session.day() == day && session.phase() == Phase::execution) session.close_phase();
    }
    return true;
}

int run_episode(Agent& agent, Session& session) {
    while (run_day(agent, session)) {
    }
    return session.days_completed();
}

std::unique_ptr<Agent> make_agent(std::string_view spec, const EpisodeConfig& config) {
    if (spec == "null") return std::make_unique<NullAgent>();
    if (spec == "heuristic") return std::make_unique<HeuristicAgent>(config.heuristic);
    if (spec.starts_with("scripted:"))
        return std::make_unique<ScriptedAgent>(load_script(std::string(spec.substr(9))));
    throw ArgumentError(fmt::format("unknown agent '{}' (expected null, heuristic or scripted:<path>)", spec));
}

}  // namespace retail

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "retail/config.hpp"
#include "retail/session.hpp"
#include "retail/strategy.hpp"

namespace retail {

/// A decision maker driven through the two-phase day protocol. Each phase
/// should end with finish_strategy_phase / end_today; the harness closes
/// phases the agent leaves open.
class Agent {
public:
    virtual ~Agent() = default;
    virtual void strategy_phase(Session& session) = 0;
    /// `strategy` is the snapshot taken when the strategy phase closed.
    virtual void execution_phase(const StrategyRecord& strategy, Session& session) = 0;
};

/// Ends both phases immediately.
class NullAgent final : public Agent {
public:
    void strategy_phase(Session& session) override;
    void execution_phase(const StrategyRecord& strategy, Session& session) override;
};

struct ScriptedCall {
    std::string tool;
    Json arguments = Json::object();
};

struct DayScript {
    std::vector<ScriptedCall> strategy;
    std::vector<ScriptedCall> execution;
};

/// Days missing from the script behave like NullAgent days.
using Script = std::map<int, DayScript>;

/// {"days": [{"day": 1, "strategy": [{"tool", "arguments"}], "execution": [...]}]}
Script parse_script(const Json& j);
Script load_script(const std::filesystem::path& path);
Json to_json(const Script& script);

class ScriptedAgent final : public Agent {
public:
    explicit ScriptedAgent(Script script) : script_(std::move(script)) {}
    void strategy_phase(Session& session) override;
    void execution_phase(const StrategyRecord& strategy, Session& session) override;

private:
    Script script_;
};

/// Base-stock replenishment with full access to the internal state.
class HeuristicAgent final : public Agent {
public:
    explicit HeuristicAgent(HeuristicConfig config) : config_(config) {}
    void strategy_phase(Session& session) override;
    void execution_phase(const StrategyRecord& strategy, Session& session) override;

    struct Plan {
        std::vector<Money> prices;
        std::vector<PlannedAction> actions;
        ExecuteStrategy execute;
    };
    /// The day's plan computed from the state at the start of the strategy phase.
    Plan plan(const WorldState& state) const;

private:
    HeuristicConfig config_;
};

/// Drives one day. Returns false when the episode was already over.
bool run_day(Agent& agent, Session& session);

/// Runs until termination or the configured max_days. Returns days completed.
int run_episode(Agent& agent, Session& session);

/// "null", "heuristic" or "scripted:<path>".
std::unique_ptr<Agent> make_agent(std::string_view spec, const EpisodeConfig& config);

}  // namespace retail

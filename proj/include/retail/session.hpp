#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "retail/engine.hpp"
#include "retail/json.hpp"
#include "retail/toolapi.hpp"

namespace retail {

/// One logged tool call. Results are not logged; they are reproducible
/// from the call sequence.
struct CallLogEntry {
    std::int64_t call_id = 0;
    Phase phase = Phase::strategy;
    std::string tool;
    Json arguments = Json::object();
    bool ok = false;
    std::optional<ToolError> error;
    std::vector<ActionFlag> flags;
    /// Phase closure issued by the harness rather than the agent.
    bool automatic = false;
};
Json to_json(const CallLogEntry& entry);

/// Stateful tool-call front end of one episode: assigns call ids, enforces
/// the per-phase call budget, and emits one trajectory record per day.
class Session {
public:
    using RecordSink = std::function<void(const Json& record)>;

    Session(const EpisodeConfig& config, std::uint64_t seed);

    void on_record(RecordSink sink) { sink_ = std::move(sink); }

    ToolResult call(std::string_view tool, Json arguments = Json::object());
    /// Closes the current phase on the agent's behalf (finish_strategy_phase
    /// or end_today), logged as an automatic call. No-op once over.
    void close_phase();

    const WorldState& state() const { return state_; }
    Phase phase() const { return state_.phase; }
    int day() const { return state_.day; }
    bool over() const { return state_.over(); }
    const std::string& end_reason() const { return state_.end_reason; }
    int days_completed() const { return days_completed_; }
    int calls_in_phase() const { return calls_in_phase_; }
    const std::vector<CallLogEntry>& pending_log() const { return log_; }
    const std::vector<DayReport>& reports() const { return reports_; }

private:
    ToolResult run(std::string_view tool, Json arguments, bool automatic);
    void finish_day(const DayReport& report);

    WorldState state_;
    RecordSink sink_;
    std::vector<CallLogEntry> log_;
    std::vector<DayReport> reports_;
    std::int64_t next_call_id_ = 1;
    int calls_in_phase_ = 0;
    int days_completed_ = 0;
};

/// {day, date, strategy, tool_calls, day_report}
Json make_record(const StrategyRecord& strategy, std::span<const CallLogEntry> calls, const DayReport& report);

}  // namespace retail

#include "retail/session.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace retail {

Json to_json(const CallLogEntry& e) {
    Json j;
    j["call_id"] = e.call_id;
    j["phase"] = to_string(e.phase);
    j["tool"] = e.tool;
    j["arguments"] = e.arguments;
    j["ok"] = e.ok;
    if (e.error) j["error"] = {{"code", e.error->code}, {"message", e.error->message}};
    if (!e.flags.empty()) {
        Json f = Json::array();
        for (const auto& flag : e.flags) f.push_back(to_json(flag));
        j["flags"] = std::move(f);
    }
    if (e.automatic) j["auto"] = true;
    return j;
}

Json make_record(const StrategyRecord& strategy, std::span<const CallLogEntry> calls, const DayReport& report) {
    Json j;
    j["day"] = report.day;
    j["date"] = report.date;
    j["strategy"] = to_json(strategy);
    Json list = Json::array();
    for (const auto& c : calls) list.push_back(to_json(c));
    j["tool_calls"] = std::move(list);
    j["day_report"] = to_json(report);
    return j;
}

Session::Session(const EpisodeConfig& config, std::uint64_t seed) : state_(init_episode(config, seed)) {}

ToolResult Session::call(std::string_view tool, Json arguments) {
    if (!over() && calls_in_phase_ >= state_.config.call_budget) {
        CallLogEntry e;
        e.call_id = next_call_id_++;
        e.phase = state_.phase;
        e.tool = std::string(tool);
        e.arguments = std::move(arguments);
        e.error = ToolError{std::string(code::budget_exceeded),
                            fmt::format("more than {} calls in the {} phase; phase closed",
                                        state_.config.call_budget, to_string(state_.phase))};
        spdlog::warn("day {}: call budget exhausted in the {} phase", state_.day, to_string(state_.phase));
        ToolResult r;
        r.call_id = e.call_id;
        r.error = e.error;
        log_.push_back(std::move(e));
        close_phase();
        return r;
    }
    return run(tool, std::move(arguments), false);
}

void Session::close_phase() {
    if (over()) return;
    run(state_.phase == Phase::strategy ? "finish_strategy_phase" : "end_today", Json::object(), true);
}

ToolResult Session::run(std::string_view tool, Json arguments, bool automatic) {
    ToolCall call{next_call_id_++, std::string(tool), std::move(arguments)};
    const Phase before = state_.phase;
    const int day_before = state_.day;
    std::optional<DayReport> report;
    ToolResult r = dispatch(call, state_, &report);

    CallLogEntry e;
    e.call_id = call.call_id;
    e.phase = before;
    e.tool = std::move(call.tool);
    e.arguments = std::move(call.arguments);
    e.ok = r.ok;
    e.error = r.error;
    e.flags = r.flags;
    e.automatic = automatic;
    if (!r.error || r.error->code != code::episode_over) log_.push_back(std::move(e));

    if (state_.phase != before || state_.day != day_before) calls_in_phase_ = 0;
    else ++calls_in_phase_;
    if (report) finish_day(*report);
    return r;
}

void Session::finish_day(const DayReport& report) {
    ++days_completed_;
    if (sink_) sink_(make_record(state_.strategy, log_, report));
    reports_.push_back(report);
    log_.clear();
}

}  // namespace retail

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retail/engine.hpp"
#include "retail/json.hpp"

namespace retail {

/// Wire-level error codes.
namespace code {
inline constexpr std::string_view phase_gate = "phase_gate";
inline constexpr std::string_view unknown_tool = "unknown_tool";
inline constexpr std::string_view invalid_arguments = "invalid_arguments";
inline constexpr std::string_view invalid_action = "invalid_action";
inline constexpr std::string_view unknown_reference = "unknown_reference";
inline constexpr std::string_view insufficient_funds = "insufficient_funds";
inline constexpr std::string_view unavailable = "unavailable";
inline constexpr std::string_view budget_exceeded = "budget_exceeded";
inline constexpr std::string_view episode_over = "episode_over";
inline constexpr std::string_view protocol_error = "protocol_error";
}  // namespace code

const std::vector<std::string_view>& error_codes();

struct ToolCall {
    std::int64_t call_id = 0;
    std::string tool;
    Json arguments = Json::object();
};

struct ToolError {
    std::string code;
    std::string message;
};

enum class FlagKind { price_out_of_range, quantity_implausible, unknown_sku, unknown_supplier };
std::string_view to_string(FlagKind kind);

struct ActionFlag {
    std::int64_t call_id = 0;
    FlagKind kind = FlagKind::price_out_of_range;
    std::string detail;
};
Json to_json(const ActionFlag& flag);

struct ToolResult {
    std::int64_t call_id = 0;
    bool ok = false;
    Json result;
    std::optional<ToolError> error;
    std::vector<ActionFlag> flags;
};
/// Wire response body: {"id", "ok", "result"} or {"id", "ok", "error"}.
Json to_wire(const ToolResult& r, const Json& id);

enum class ToolAccess { read, strategy_only, execution_only };

struct ToolInfo {
    std::string_view name;
    ToolAccess access;
    bool mutating;
};

const std::vector<ToolInfo>& tool_catalog();
const ToolInfo* find_tool(std::string_view name);
bool permitted(const ToolInfo& tool, Phase phase);
/// Tools callable in `phase` given whether news is enabled.
std::vector<std::string> available_tools(Phase phase, bool news_enabled);

struct Verdict {
    bool accept = true;
    std::optional<ToolError> error;
    std::vector<ActionFlag> flags;
};

/// Hard rejects and advisory flags for place_order / modify_sku_price.
/// Argument shape errors are reported with code invalid_arguments.
Verdict validate_action(const ToolCall& call, const WorldState& state);

/// Routes one call against the state. Errors never mutate the state.
/// end_today runs the transition; its DayReport is stored in `report_out`.
ToolResult dispatch(const ToolCall& call, WorldState& state, std::optional<DayReport>* report_out = nullptr);

/// Day numbers may be given as integers or as calendar dates.
std::optional<int> parse_day(const Json& value, const Calendar& calendar);

}  // namespace retail

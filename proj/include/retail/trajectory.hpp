#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "retail/config.hpp"
#include "retail/json.hpp"
#include "retail/session.hpp"

namespace retail {

inline constexpr std::string_view kTrajectoryFormat = "retail-trajectory/1";

/// First line of a trajectory file: {"format", "seed", "agent", "config"}.
Json trajectory_header(const EpisodeConfig& config, std::uint64_t seed, std::string_view agent);

/// Writes one JSON object per line and flushes after each, so an
/// interrupted episode leaves a readable prefix.
class TrajectoryWriter {
public:
    explicit TrajectoryWriter(const std::filesystem::path& path);
    explicit TrajectoryWriter(std::ostream& out) : out_(&out) {}

    void write(const Json& line);
    /// Hooks the writer to a session's per-day records.
    void attach(Session& session);

private:
    std::ofstream file_;
    std::ostream* out_;
};

struct Trajectory {
    Json header;                    ///< null when the file has none
    std::vector<Json> records;
    std::vector<std::string> lines; ///< raw record lines, for byte comparison
};

/// Throws SchemaError on malformed lines.
Trajectory read_trajectory(const std::filesystem::path& path);
Trajectory parse_trajectory(std::istream& in);

struct Divergence {
    int day = 0;
    std::string path;  ///< JSON pointer into the day's record
    std::string expected;
    std::string actual;
};

struct ReplayReport {
    int days_checked = 0;
    std::optional<Divergence> divergence;
    bool ok() const { return !divergence; }
};

/// Re-executes the logged calls under the logged config and seed, comparing
/// each regenerated record with the logged one byte for byte.
ReplayReport replay(const Trajectory& trajectory);

/// JSON pointer of the first difference between two values; empty if equal.
std::optional<Divergence> first_difference(const Json& expected, const Json& actual);

}  // namespace retail

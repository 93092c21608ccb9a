#include "retail/trajectory.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "retail/errors.hpp"

namespace retail {

namespace {

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

std::optional<Divergence> diff(const Json& a, const Json& b, const std::string& path) {
    auto here = [&](std::string expected, std::string actual) {
        return Divergence{0, path.empty() ? "/" : path, std::move(expected), std::move(actual)};
    };
    if (a.type() != b.type() && !(a.is_number() && b.is_number())) return here(a.dump(), b.dump());
    if (a.is_object()) {
        for (const auto& [key, value] : a.items()) {
            auto it = b.find(key);
            if (it == b.end()) return here(fmt::format("key '{}'", key), "missing");
            if (auto d = diff(value, *it, path + "/" + escape_token(key))) return d;
        }
        for (const auto& [key, _] : b.items())
            if (!a.contains(key)) return here("missing", fmt::format("key '{}'", key));
        return std::nullopt;
    }
    if (a.is_array()) {
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if (auto d = diff(a[i], b[i], fmt::format("{}/{}", path, i))) return d;
        if (a.size() != b.size()) return here(fmt::format("{} elements", a.size()), fmt::format("{} elements", b.size()));
        return std::nullopt;
    }
    if (a != b) return here(a.dump(), b.dump());
    return std::nullopt;
}

}  // namespace

Json trajectory_header(const EpisodeConfig& config, std::uint64_t seed, std::string_view agent) {
    return {{"format", kTrajectoryFormat}, {"seed", seed}, {"agent", agent}, {"config", to_json(config)}};
}

TrajectoryWriter::TrajectoryWriter(const std::filesystem::path& path) : file_(path), out_(&file_) {
    if (!file_) throw ConfigError(fmt::format("cannot write trajectory to {}", path.string()));
}

void TrajectoryWriter::write(const Json& line) {
    *out_ << line.dump() << '\n';
    out_->flush();
}

void TrajectoryWriter::attach(Session& session) {
    session.on_record([this](const Json& record) { write(record); });
}

Trajectory parse_trajectory(std::istream& in) {
    Trajectory t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw SchemaError(fmt::format("trajectory line {}: {}", line_no, e.what()));
        }
        if (!j.is_object()) throw SchemaError(fmt::format("trajectory line {} is not an object", line_no));
        if (j.contains("format")) {
            if (line_no != 1) throw SchemaError("trajectory header must be the first line");
            if (j["format"] != kTrajectoryFormat)
                throw SchemaError(fmt::format("unsupported trajectory format {}", j["format"].dump()));
            t.header = std::move(j);
            continue;
        }
        for (const char* key : {"day", "date", "strategy", "tool_calls", "day_report"})
            if (!j.contains(key)) throw SchemaError(fmt::format("trajectory line {} lacks '{}'", line_no, key));
        t.records.push_back(std::move(j));
        t.lines.push_back(line);
    }
    return t;
}

Trajectory read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read trajectory {}", path.string()));
    return parse_trajectory(in);
}

std::optional<Divergence> first_difference(const Json& expected, const Json& actual) {
    return diff(expected, actual, "");
}

ReplayReport replay(const Trajectory& t) {
    if (t.header.is_null()) throw SchemaError("trajectory has no header; cannot replay");
    const auto config = config_from_json(t.header.at("config"));
    const auto seed = t.header.at("seed").get<std::uint64_t>();

    Session session(config, seed);
    std::vector<std::string> produced;
    session.on_record([&](const Json& record) { produced.push_back(record.dump()); });

    ReplayReport report;
    for (std::size_t i = 0; i < t.records.size(); ++i) {
        const Json& logged = t.records[i];
        const int day = logged.at("day").get<int>();
        auto diverge = [&](std::string path, std::string expected, std::string actual) {
            report.divergence = Divergence{day, std::move(path), std::move(expected), std::move(actual)};
            return report;
        };
        if (session.over()) return diverge("/", "a record", fmt::format("episode ended ({})", session.end_reason()));

        for (const auto& entry : logged.at("tool_calls")) {
            if (entry.value("auto", false)) continue;
            if (produced.size() > i)
                return diverge("/tool_calls", "more calls on this day", "day already closed");
            const auto phase = entry.at("phase").get<std::string>();
            if (phase == "execution" && session.phase() == Phase::strategy) session.close_phase();
            session.call(entry.at("tool").get<std::string>(), entry.value("arguments", Json::object()));
        }
        while (produced.size() <= i && !session.over()) session.close_phase();
        if (produced.size() <= i) return diverge("/", "a record", "no record produced");

        if (produced[i] != t.lines[i]) {
            auto d = first_difference(logged, Json::parse(produced[i]));
            if (!d) d = Divergence{day, "/", "logged bytes", "regenerated bytes differ in formatting"};
            d->day = day;
            report.divergence = d;
            return report;
        }
        ++report.days_checked;
    }
    return report;
}

}  // namespace retail

// retailsim: run, serve, replay and report supermarket episodes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "retail/config.hpp"
#include "retail/errors.hpp"
#include "retail/metrics.hpp"
#include "retail/policy.hpp"
#include "retail/protocol.hpp"
#include "retail/session.hpp"
#include "retail/trajectory.hpp"

using namespace retail;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 1;

void setup_logging() {
    auto logger = spdlog::stderr_logger_mt("retailsim");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("SIM_LOG_LEVEL");
    const std::string level = env ? env : "warn";
    if (level == "error") spdlog::set_level(spdlog::level::err);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
    else if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::set_level(spdlog::level::warn);
}

struct EpisodeOptions {
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_days;
    std::string out = "trajectory.ndjson";
    std::string summary;
};

void add_config_options(CLI::App* cmd, EpisodeOptions& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (may name a base preset)");
    cmd->add_option("--preset", o.preset, "easy, middle or hard");
    cmd->add_option("--seed", o.seed, "master random seed (overrides the config)");
    cmd->add_option("--max-days", o.max_days, "day horizon (overrides the config)")->check(CLI::PositiveNumber);
}

void add_episode_options(CLI::App* cmd, EpisodeOptions& o) {
    add_config_options(cmd, o);
    cmd->add_option("--out", o.out, "trajectory output path");
    cmd->add_option("--summary", o.summary, "write the metrics summary CSV here");
}

EpisodeConfig resolve_config(const EpisodeOptions& o) {
    EpisodeConfig c;
    if (!o.config_path.empty()) c = load_config(o.config_path, o.preset.empty() ? "easy" : o.preset);
    else c = preset_config(o.preset.empty() ? "easy" : o.preset);
    if (o.seed) c.seed = *o.seed;
    if (o.max_days) c.max_days = *o.max_days;
    validate(c);
    return c;
}

ReportRow report_row(const std::string& label, const Trajectory& t) {
    ReportRow row{label, compute_episode_metrics(t.records), std::nullopt, std::nullopt};
    const auto series = similarity_series(t.records);
    if (series.macro.size() >= 2) {
        row.macro = instability(series.macro);
        row.execution = instability(series.execution);
    }
    return row;
}

void write_summary(const std::string& path, const std::string& csv, bool allow_stdout) {
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw ConfigError(fmt::format("cannot write summary to {}", path));
        f << csv;
    } else if (allow_stdout) {
        std::cout << csv;
    }
}

int run_episode_command(const EpisodeOptions& o, const std::string& agent_spec) {
    const auto config = resolve_config(o);
    const bool serving = agent_spec == "serve";
    std::unique_ptr<Agent> agent;
    if (!serving) agent = make_agent(agent_spec, config);

    Session session(config, config.seed);
    TrajectoryWriter writer(o.out);
    writer.write(trajectory_header(config, config.seed, agent_spec));
    writer.attach(session);

    int status = 0;
    if (serving) {
        status = serve(session, std::cin, std::cout);
    } else {
        run_episode(*agent, session);
    }
    spdlog::info("{} days completed ({})", session.days_completed(),
                 session.over() ? session.end_reason() : std::string("interrupted"));
    if (session.days_completed() > 0) {
        const auto t = read_trajectory(o.out);
        const std::vector<ReportRow> rows{report_row(o.out, t)};
        write_summary(o.summary, summary_csv(rows), !serving);
    }
    return status;
}

int replay_command(const std::string& path) {
    const auto t = read_trajectory(path);
    const auto report = replay(t);
    if (report.ok()) {
        std::cout << fmt::format("verified {} days, no divergence\n", report.days_checked);
        return 0;
    }
    const auto& d = *report.divergence;
    std::cout << fmt::format("divergence at day {} field {}: logged {} regenerated {}\n", d.day, d.path, d.expected,
                             d.actual);
    return kExitDivergence;
}

int report_command(const std::vector<std::string>& paths, const std::string& out) {
    std::vector<ReportRow> rows;
    int failures = 0;
    for (const auto& p : paths) {
        try {
            rows.push_back(report_row(p, read_trajectory(p)));
        } catch (const std::exception& e) {
            ++failures;
            std::cerr << fmt::format("{}: {}\n", p, e.what());
        }
    }
    if (!rows.empty()) write_summary(out, summary_csv(rows), true);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Supermarket operation simulator"};
    app.require_subcommand(1);

    EpisodeOptions run_opts;
    std::string agent = "heuristic";
    auto* run = app.add_subcommand("run", "run one episode with a built-in agent or serve an external one");
    add_episode_options(run, run_opts);
    run->add_option("--agent", agent, "null, heuristic, scripted:<path> or serve");

    EpisodeOptions serve_opts;
    auto* srv = app.add_subcommand("serve", "serve one episode over stdin/stdout");
    add_episode_options(srv, serve_opts);

    std::string replay_path;
    auto* rep = app.add_subcommand("replay", "re-execute a trajectory and verify it");
    rep->add_option("trajectory", replay_path, "trajectory file")->required();

    std::vector<std::string> report_paths;
    std::string report_out;
    auto* rpt = app.add_subcommand("report", "summarize trajectories");
    rpt->add_option("trajectories", report_paths, "trajectory files")->required();
    rpt->add_option("--out", report_out, "write the CSV here instead of stdout");

    EpisodeOptions config_opts;
    auto* cfg = app.add_subcommand("config", "print the resolved episode config as JSON");
    add_config_options(cfg, config_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return run_episode_command(run_opts, agent);
        if (*srv) return run_episode_command(serve_opts, "serve");
        if (*rep) return replay_command(replay_path);
        if (*rpt) return report_command(report_paths, report_out);
        if (*cfg) {
            std::cout << to_json(resolve_config(config_opts)).dump(2) << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}

#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "retail/json.hpp"
#include "retail/strategy.hpp"

namespace retail {

struct EpisodeMetrics {
    int days = 0;
    double avg_daily_sales = 0.0;
    double avg_daily_income = 0.0;
    double expiry_ratio = 0.0;
    double return_ratio = 0.0;
};

/// From trajectory records (their day_report parts). Throws ArgumentError
/// when empty.
EpisodeMetrics compute_episode_metrics(std::span<const Json> records);

struct StabilityStats {
    double std_diff = 0.0;
    double mac = 0.0;
    double tv = 0.0;
};

/// Population std, mean and sum of absolute first differences.
StabilityStats instability(std::span<const double> series);

/// |A ∩ B| / |A ∪ B| with J(∅, ∅) = 1.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Mean Jaccard over focus_skus, sku_supplier_mapping, news_to_monitor and
/// sku_to_monitor.
double execution_similarity(const StrategyRecord& a, const StrategyRecord& b);

using MacroJudge = std::function<double(const std::vector<std::string>&, const std::vector<std::string>&)>;

/// Symmetrized mean best-match token-set Jaccard between statements.
double token_jaccard_judge(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Delegates to `judge` (the token judge when empty) and clamps to [0, 1].
double macro_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b,
                        const MacroJudge& judge = {});

struct SimilaritySeries {
    std::vector<double> macro;
    std::vector<double> execution;
};

/// Day-over-day similarities between consecutive strategy records.
SimilaritySeries similarity_series(std::span<const Json> records, const MacroJudge& judge = {});

struct RolloutSummary {
    int episodes = 0;
    double days_mean = 0.0;
    int max_days = 0;
    double avg_daily_sales = 0.0;
    double avg_daily_income = 0.0;
    double expiry_ratio = 0.0;
    double return_ratio = 0.0;
};

RolloutSummary aggregate_rollouts(std::span<const EpisodeMetrics> episodes);

struct ReportRow {
    std::string label;
    EpisodeMetrics metrics;
    std::optional<StabilityStats> macro;
    std::optional<StabilityStats> execution;
};

/// Comma-separated table with one row per episode plus an aggregate row.
std::string summary_csv(std::span<const ReportRow> rows);

}  // namespace retail

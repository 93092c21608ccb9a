#include "retail/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "retail/errors.hpp"

namespace retail {

namespace {

std::set<std::string> tokens(const std::string& text) {
    std::set<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            out.insert(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.insert(std::move(cur));
    return out;
}

double best_match_mean(const std::vector<std::set<std::string>>& from, const std::vector<std::set<std::string>>& to) {
    double sum = 0.0;
    for (const auto& a : from) {
        double best = 0.0;
        for (const auto& b : to) best = std::max(best, jaccard(a, b));
        sum += best;
    }
    return sum / static_cast<double>(from.size());
}

std::string fmt_opt(const std::optional<StabilityStats>& s, double StabilityStats::*field) {
    return s ? fmt::format("{:.6f}", (*s).*field) : std::string();
}

}  // namespace

EpisodeMetrics compute_episode_metrics(std::span<const Json> records) {
    if (records.empty()) throw ArgumentError("metrics need at least one day");
    EpisodeMetrics m;
    m.days = static_cast<int>(records.size());
    double sold = 0, expired = 0, delivered = 0, returned = 0, income = 0;
    for (const auto& rec : records) {
        const auto& r = rec.at("day_report");
        sold += r.at("units_sold").get<double>();
        income += r.at("revenue").get<double>() - r.at("refunds").get<double>();
        for (const auto& k : r.at("skus")) {
            expired += k.at("expired").get<double>();
            delivered += k.at("delivered").get<double>();
            returned += k.at("returned").get<double>();
        }
    }
    m.avg_daily_sales = sold / m.days;
    m.avg_daily_income = income / m.days;
    m.expiry_ratio = delivered > 0 ? expired / delivered : 0.0;
    m.return_ratio = sold > 0 ? returned / sold : 0.0;
    return m;
}

StabilityStats instability(std::span<const double> series) {
    if (series.size() < 2) throw ArgumentError("instability needs a series of length at least 2");
    std::vector<double> d(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) d[i - 1] = series[i] - series[i - 1];
    const double n = static_cast<double>(d.size());
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
    double var = 0.0, tv = 0.0;
    for (double x : d) {
        var += (x - mean) * (x - mean);
        tv += std::abs(x);
    }
    return {std::sqrt(var / n), tv / n, tv};
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t common = 0;
    for (const auto& x : a) common += b.count(x);
    return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double execution_similarity(const StrategyRecord& a, const StrategyRecord& b) {
    auto set_of = [](const std::vector<std::string>& v) { return std::set<std::string>(v.begin(), v.end()); };
    auto mapping = [](const std::vector<SupplierMapping>& v) {
        std::set<std::string> out;
        for (const auto& m : v) out.insert(m.sku_id + "|" + m.supplier_id);
        return out;
    };
    const auto& x = a.execute_strategy;
    const auto& y = b.execute_strategy;
    return (jaccard(set_of(x.focus_skus), set_of(y.focus_skus)) +
            jaccard(mapping(x.sku_supplier_mapping), mapping(y.sku_supplier_mapping)) +
            jaccard(set_of(x.news_to_monitor), set_of(y.news_to_monitor)) +
            jaccard(set_of(x.sku_to_monitor), set_of(y.sku_to_monitor))) /
           4.0;
}

double token_jaccard_judge(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::vector<std::set<std::string>> ta, tb;
    for (const auto& s : a) ta.push_back(tokens(s));
    for (const auto& s : b) tb.push_back(tokens(s));
    return 0.5 * (best_match_mean(ta, tb) + best_match_mean(tb, ta));
}

double macro_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b,
                        const MacroJudge& judge) {
    const double raw = judge ? judge(a, b) : token_jaccard_judge(a, b);
    if (std::isnan(raw)) {
        spdlog::warn("macro similarity judge returned NaN; recorded as 0");
        return 0.0;
    }
    const double clamped = std::clamp(raw, 0.0, 1.0);
    if (clamped != raw) spdlog::warn("macro similarity judge returned {}; clamped to {}", raw, clamped);
    return clamped;
}

SimilaritySeries similarity_series(std::span<const Json> records, const MacroJudge& judge) {
    SimilaritySeries out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto prev = strategy_from_json(records[i - 1].at("strategy"), records[i - 1].at("day").get<int>());
        const auto cur = strategy_from_json(records[i].at("strategy"), records[i].at("day").get<int>());
        out.macro.push_back(macro_similarity(prev.macro_strategy, cur.macro_strategy, judge));
        out.execution.push_back(execution_similarity(prev, cur));
    }
    return out;
}

RolloutSummary aggregate_rollouts(std::span<const EpisodeMetrics> episodes) {
    if (episodes.empty()) throw ArgumentError("aggregate needs at least one episode");
    RolloutSummary s;
    s.episodes = static_cast<int>(episodes.size());
    for (const auto& e : episodes) {
        s.days_mean += e.days;
        s.max_days = std::max(s.max_days, e.days);
        s.avg_daily_sales += e.avg_daily_sales;
        s.avg_daily_income += e.avg_daily_income;
        s.expiry_ratio += e.expiry_ratio;
        s.return_ratio += e.return_ratio;
    }
    const double n = s.episodes;
    s.days_mean /= n;
    s.avg_daily_sales /= n;
    s.avg_daily_income /= n;
    s.expiry_ratio /= n;
    s.return_ratio /= n;
    return s;
}

std::string summary_csv(std::span<const ReportRow> rows) {
    std::string out =
        "episode,Days,MaxDays,Avg Daily Sales,Avg Daily Income,Expiry Ratio,Return Ratio,"
        "Macro Std_diff,Macro MAC,Macro TV,Exec Std_diff,Exec MAC,Exec TV\n";
    std::vector<EpisodeMetrics> all;
    for (const auto& r : rows) {
        const auto& m = r.metrics;
        all.push_back(m);
        out += fmt::format("{},{},{},{:.4f},{:.2f},{:.6f},{:.6f},{},{},{},{},{},{}\n", r.label, m.days, m.days,
                           m.avg_daily_sales, m.avg_daily_income, m.expiry_ratio, m.return_ratio,
                           fmt_opt(r.macro, &StabilityStats::std_diff), fmt_opt(r.macro, &StabilityStats::mac),
                           fmt_opt(r.macro, &StabilityStats::tv), fmt_opt(r.execution, &StabilityStats::std_diff),
                           fmt_opt(r.execution, &StabilityStats::mac), fmt_opt(r.execution, &StabilityStats::tv));
    }
    if (all.empty()) return out;

    const auto agg = aggregate_rollouts(all);
    auto mean_of = [&](auto pick) {
        double sum = 0.0;
        int n = 0;
        for (const auto& r : rows)
            if (auto v = pick(r)) {
                sum += *v;
                ++n;
            }
        return n ? fmt::format("{:.6f}", sum / n) : std::string();
    };
    auto stat = [](const std::optional<StabilityStats>& s, double StabilityStats::*f) {
        return s ? std::optional<double>((*s).*f) : std::nullopt;
    };
    out += fmt::format("aggregate,{:.2f},{},{:.4f},{:.2f},{:.6f},{:.6f},{},{},{},{},{},{}\n", agg.days_mean,
                       agg.max_days, agg.avg_daily_sales, agg.avg_daily_income, agg.expiry_ratio, agg.return_ratio,
                       mean_of([&](const ReportRow& r) { return stat(r.macro, &StabilityStats::std_diff); }),
                       mean_of([&](const ReportRow& r) { return stat(r.macro, &StabilityStats::mac); }),
                       mean_of([&](const ReportRow& r) { return stat(r.macro, &StabilityStats::tv); }),
                       mean_of([&](const ReportRow& r) { return stat(r.execution, &StabilityStats::std_diff); }),
                       mean_of([&](const ReportRow& r) { return stat(r.execution, &StabilityStats::mac); }),
                       mean_of([&](const ReportRow& r) { return stat(r.execution, &StabilityStats::tv); }));
    return out;
}

}  // namespace retail

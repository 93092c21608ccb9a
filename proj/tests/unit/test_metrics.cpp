#include <doctest.h>

#include <cmath>

#include "retail/errors.hpp"
#include "retail/metrics.hpp"
#include "retail/rng.hpp"

using namespace retail;

namespace {

Json day_record(int day, double sold, double expired, double delivered, double returned, double revenue = 0,
                double refunds = 0) {
    Json sku{{"expired", expired}, {"delivered", delivered}, {"returned", returned}};
    return {{"day", day},
            {"strategy", {{"macro_strategy", Json::array()}, {"execute_strategy", Json::object()},
                          {"today_action", Json::array()}}},
            {"day_report",
             {{"units_sold", sold}, {"revenue", revenue}, {"refunds", refunds}, {"skus", Json::array({sku})}}}};
}

StrategyRecord with_focus(std::vector<std::string> focus) {
    StrategyRecord r;
    r.execute_strategy.focus_skus = std::move(focus);
    return r;
}

StabilityStats oracle_instability(const std::vector<double>& s) {
    std::vector<long double> d;
    for (std::size_t i = 1; i < s.size(); ++i) d.push_back(static_cast<long double>(s[i]) - s[i - 1]);
    long double mean = 0, tv = 0;
    for (auto x : d) {
        mean += x;
        tv += std::fabs(x);
    }
    mean /= d.size();
    long double var = 0;
    for (auto x : d) var += (x - mean) * (x - mean);
    return {static_cast<double>(std::sqrt(var / d.size())), static_cast<double>(tv / d.size()), static_cast<double>(tv)};
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("episode ratios") {
    std::vector<Json> recs;
    for (int d = 1; d <= 10; ++d) recs.push_back(day_record(d, 5, 10, 100, 1, 20, 2));
    const auto m = compute_episode_metrics(recs);
    CHECK(m.days == 10);
    CHECK(m.expiry_ratio == doctest::Approx(0.1));
    CHECK(m.return_ratio == doctest::Approx(0.2));
    CHECK(m.avg_daily_sales == doctest::Approx(5));
    CHECK(m.avg_daily_income == doctest::Approx(18));
}

TEST_CASE("degenerate denominators") {
    std::vector<Json> recs{day_record(1, 0, 0, 0, 0)};
    const auto m = compute_episode_metrics(recs);
    CHECK(m.return_ratio == 0.0);
    CHECK(m.expiry_ratio == 0.0);
    CHECK_THROWS_AS(compute_episode_metrics(std::vector<Json>{}), ArgumentError);
}

TEST_CASE("instability reference series") {
    const std::vector<double> s{0.8, 0.6, 0.9};
    const auto st = instability(s);
    CHECK(std::abs(st.std_diff - 0.25) <= 1e-12);
    CHECK(std::abs(st.mac - 0.25) <= 1e-12);
    CHECK(std::abs(st.tv - 0.5) <= 1e-12);

    const std::vector<double> flat(6, 0.4);
    const auto z = instability(flat);
    CHECK(z.std_diff == 0.0);
    CHECK(z.mac == 0.0);
    CHECK(z.tv == 0.0);
    CHECK_THROWS_AS(instability(std::vector<double>{1.0}), ArgumentError);
}

TEST_CASE("instability matches the oracle on random series") {
    Engine rng(17);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> s(static_cast<std::size_t>(draw::uniform_int(rng, 2, 60)));
        for (auto& x : s) x = draw::uniform_real(rng, 0.0, 1.0);
        const auto a = instability(s);
        const auto b = oracle_instability(s);
        REQUIRE(std::abs(a.std_diff - b.std_diff) < 1e-12);
        REQUIRE(std::abs(a.mac - b.mac) < 1e-12);
        REQUIRE(std::abs(a.tv - b.tv) < 1e-12);
        CHECK(a.tv == doctest::Approx(a.mac * static_cast<double>(s.size() - 1)));
    }
}

TEST_CASE("jaccard") {
    CHECK(jaccard({}, {}) == 1.0);
    CHECK(jaccard({"a"}, {}) == 0.0);
    CHECK(jaccard({"a", "b"}, {"b", "c"}) == doctest::Approx(1.0 / 3));
}

TEST_CASE("execution similarity") {
    const auto a = with_focus({"A", "B"});
    CHECK(execution_similarity(a, a) == 1.0);
    CHECK(std::abs(execution_similarity(a, with_focus({"B", "C"})) - 0.8333) <= 1e-4);

    StrategyRecord x, y;
    x.execute_strategy = {{"A"}, {{"A", "s1"}}, {"n1"}, {}, {}, {"A"}, {}};
    y.execute_strategy = {{"B"}, {{"A", "s2"}}, {"n2"}, {}, {}, {"B"}, {}};
    CHECK(execution_similarity(x, y) == 0.0);
}

TEST_CASE("macro similarity") {
    const std::vector<std::string> a{"keep shelves full", "price low"};
    CHECK(macro_similarity(a, a) == 1.0);
    CHECK(macro_similarity(a, {"reduce waste"}) == 0.0);
    CHECK(macro_similarity({}, {}) == 1.0);
    CHECK(macro_similarity(a, a, [](auto&, auto&) { return 1.3; }) == 1.0);
    CHECK(macro_similarity(a, a, [](auto&, auto&) { return -0.2; }) == 0.0);
    CHECK(macro_similarity(a, a, [](auto&, auto&) { return std::nan(""); }) == 0.0);
    const double partial = macro_similarity({"keep shelves full"}, {"keep shelves empty"});
    CHECK(partial == doctest::Approx(0.5));
}

TEST_CASE("similarity series") {
    std::vector<Json> recs{day_record(1, 0, 0, 0, 0), day_record(2, 0, 0, 0, 0), day_record(3, 0, 0, 0, 0)};
    recs[2]["strategy"]["execute_strategy"]["focus_skus"] = {"A"};
    const auto s = similarity_series(recs);
    CHECK(s.execution == std::vector<double>{1.0, 0.75});
    CHECK(s.macro == std::vector<double>{1.0, 1.0});
}

TEST_CASE("rollout aggregation") {
    std::vector<EpisodeMetrics> e(3);
    e[0].days = 45;
    e[1].days = 50;
    e[2].days = 40;
    const auto s = aggregate_rollouts(e);
    CHECK(s.days_mean == 45.0);
    CHECK(s.max_days == 50);
    const auto one = aggregate_rollouts(std::span(e).first(1));
    CHECK(one.days_mean == 45.0);
    CHECK(one.max_days == 45);
    CHECK_THROWS_AS(aggregate_rollouts(std::vector<EpisodeMetrics>{}), ArgumentError);
}

TEST_CASE("summary table") {
    std::vector<ReportRow> rows(2);
    rows[0].label = "a";
    rows[0].metrics.days = 45;
    rows[1].label = "b";
    rows[1].metrics.days = 200;
    rows[1].macro = StabilityStats{0.1, 0.2, 0.3};
    rows[1].execution = StabilityStats{0.0, 0.0, 0.0};
    const auto csv = summary_csv(rows);
    CHECK(csv.rfind("episode,Days,MaxDays,", 0) == 0);
    CHECK(csv.find("\na,45,45,") != std::string::npos);
    CHECK(csv.find("\naggregate,122.50,200,") != std::string::npos);
    CHECK(csv.find("0.100000,0.200000,0.300000") != std::string::npos);
}

}

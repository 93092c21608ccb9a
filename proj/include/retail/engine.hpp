#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "retail/calendar.hpp"
#include "retail/catalog.hpp"
#include "retail/config.hpp"
#include "retail/finance.hpp"
#include "retail/inventory.hpp"
#include "retail/json.hpp"
#include "retail/money.hpp"
#include "retail/news.hpp"
#include "retail/reviews.hpp"
#include "retail/rng.hpp"
#include "retail/strategy.hpp"
#include "retail/supply.hpp"

namespace retail {

enum class Phase { strategy, execution, ended };
std::string_view to_string(Phase phase);

struct SalesRecord {
    int day = 0;
    std::int64_t units = 0;
    Money price;
};

struct WorldState {
    EpisodeConfig config;
    std::uint64_t seed = 0;
    Calendar calendar;

    int day = 1;
    Phase phase = Phase::strategy;
    std::string end_reason;  ///< set once phase == ended

    Catalog catalog;
    SupplierTable suppliers;
    std::vector<Money> prices;
    InventoryLedger inventory;
    OrderBook orders;
    std::vector<NewsEvent> news;
    std::int64_t next_event_id = 1;
    ReviewBook reviews;
    std::vector<std::vector<SalesRecord>> sales_history;
    FinancialState finance;

    /// Strategy being edited during the strategy phase; starts as a copy of
    /// yesterday's record so unset parts carry over.
    StrategyRecord draft;
    /// Snapshot taken at finish_strategy_phase; read-only during execution.
    StrategyRecord strategy;
    std::map<std::string, std::string> memory;

    RngStreams rng{0};

    Money funds_day_start;
    Money procurement_today;
    std::vector<std::int64_t> placed_orders_today;  ///< units ordered per SKU

    bool over() const { return phase == Phase::ended; }
    std::size_t sku_count() const { return catalog.size(); }
};

struct SkuDayReport {
    std::string sku_id;
    Money price;
    std::int64_t potential = 0;
    std::int64_t sold = 0;
    bool stockout = false;
    std::int64_t returned = 0;
    std::int64_t reviews = 0;
    std::int64_t expired = 0;
    std::int64_t delivered = 0;
    std::int64_t placed = 0;
    std::int64_t queued = 0;
    std::int64_t released = 0;
    std::int64_t on_hand_start = 0;
    std::int64_t on_hand_end = 0;
    std::int64_t pending_end = 0;
    std::int64_t ordered = 0;
};

struct DayReport {
    int day = 0;
    std::string date;
    std::int64_t traffic = 0;
    std::int64_t units_sold = 0;
    Money revenue;
    Money refunds;
    Money procurement;
    RentOutcome rent;
    Money funds_start;
    Money funds_end;
    Money net_worth_end;
    std::int64_t on_hand_total = 0;
    std::int64_t pending_total = 0;
    std::int64_t capacity = 0;
    std::int64_t orders_delivered = 0;
    std::vector<NewsEvent> news;  ///< events in force during the day's sales
    std::optional<std::string> end_reason;
    std::vector<SkuDayReport> skus;
};

Json to_json(const DayReport& report);

/// Traffic used for alpha calibration and the heuristic's demand estimate.
int mean_daily_traffic(const TrafficConfig& traffic);

/// Builds day 1 of an episode. Throws ConfigError on invalid configs.
WorldState init_episode(const EpisodeConfig& config, std::uint64_t master_seed);

/// Runs the end-of-day dynamics and advances to the next strategy phase,
/// or ends the episode. Throws PhaseError outside the execution phase.
DayReport end_of_day_transition(WorldState& state);

/// Per-SKU utility deltas from current reviews and active news.
std::vector<double> review_deltas(const WorldState& state);
std::vector<double> news_deltas(const WorldState& state);

/// Current supplier quotes (news-adjusted), indexed [sku][supplier].
std::vector<std::vector<Money>> current_quotes(const WorldState& state);

Money current_net_worth(const WorldState& state);

/// Canonical serialization of all mutable episode state, random engines
/// included. Two states with equal digests behave identically.
Json state_snapshot(const WorldState& state);
std::uint64_t state_digest(const WorldState& state);

}  // namespace retail

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retail/catalog.hpp"
#include "retail/demand.hpp"
#include "retail/json.hpp"
#include "retail/money.hpp"
#include "retail/news.hpp"

namespace retail {

/// Parameters of the privileged base-stock policy.
struct HeuristicConfig {
    double cover_days = 10.0;  ///< max lead time (7) + review period (3)
    double markup = 1.8;
    double quality_cost_tradeoff = 0.5;
    double price_floor = 0.5;
    double price_cap = 45.0;
    /// Funds kept back for rent when sizing orders, in days of rent; covers
    /// the longest lead time with no sales.
    double rent_reserve_days = 8.0;

    bool operator==(const HeuristicConfig&) const = default;
};

/// Thresholds of the anomalous-action detector.
struct ValidatorConfig {
    double price_flag_threshold = 50.0;
    double quantity_flag_fraction = 0.25;

    bool operator==(const ValidatorConfig&) const = default;
};

struct EpisodeConfig {
    std::string name = "custom";
    std::uint64_t seed = 42;
    int max_days = 200;
    std::string epoch_date = "1991-09-07";

    Money initial_funds = Money::from_cents(1'000'000);
    Money daily_rent = Money::from_cents(25'000);
    std::int64_t inventory_capacity = 10'000;

    CatalogConfig catalog;
    std::optional<std::string> catalog_path;
    /// Expected daily sales at base prices targeted by alpha calibration;
    /// calibration is skipped when absent.
    std::optional<double> calibration_target;

    bool review_enabled = true;
    double review_ratio = 0.02;
    double review_weight = 0.5;
    int review_window = 14;
    double return_base = 0.1;

    NewsConfig news;
    TrafficConfig traffic;

    int call_budget = 200;
    ValidatorConfig validator;
    HeuristicConfig heuristic;

    bool operator==(const EpisodeConfig&) const = default;
};

/// "easy", "middle" or "hard"; throws ConfigError otherwise.
EpisodeConfig preset_config(std::string_view name);
const std::vector<std::string>& preset_names();

/// Throws ConfigError describing the first violated constraint.
void validate(const EpisodeConfig& config);

Json to_json(const EpisodeConfig& config);
/// Keys absent from `j` keep their defaults; unknown keys are rejected.
EpisodeConfig config_from_json(const Json& j);

/// Reads a JSON config file. A top-level "preset" key selects the base
/// preset that the remaining keys override; `base_preset` is used when the
/// file names none. An empty `base_preset` applies the file to bare defaults.
EpisodeConfig load_config(const std::filesystem::path& path, std::string_view base_preset = "easy");

}  // namespace retail

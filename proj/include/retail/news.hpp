#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retail/catalog.hpp"
#include "retail/json.hpp"
#include "retail/rng.hpp"

namespace retail {

enum class NewsScope { macro, category, product, neutral };
enum class NewsSide { demand, supply, both };

std::string_view to_string(NewsScope scope);
std::string_view to_string(NewsSide side);

struct NewsEvent {
    std::int64_t event_id = 0;
    NewsScope scope = NewsScope::neutral;
    std::optional<std::string> target;  ///< category id or sku id
    NewsSide side = NewsSide::demand;
    int sign = 1;
    double magnitude = 0.0;
    std::string text;
    int ttl = 1;
    int created_day = 0;

    bool operator==(const NewsEvent&) const = default;
};

/// Scope mix and impact weights keyed by generation mode.
struct NewsModeTable {
    double neutral = 0.0;
    double single_category = 0.0;
    double macro_all = 0.0;
    double sku_level = 0.0;

    double sum() const { return neutral + single_category + macro_all + sku_level; }
    bool operator==(const NewsModeTable&) const = default;
};

struct NewsConfig {
    bool enabled = false;
    int daily_count = 20;
    double base_scale = 0.4;
    NewsModeTable sample_ratios{0.9, 0.02, 0.03, 0.05};
    NewsModeTable mode_weights{0.0, 1.0, 1.0, 1.2};
    /// Own seed for the news stream; the episode seed is used when absent.
    std::optional<std::uint64_t> seed;
    int ttl_min = 1;
    int ttl_max = 7;

    bool operator==(const NewsConfig&) const = default;
};

/// Draws exactly config.daily_count events for `day`. Event ids continue from
/// next_event_id, which is advanced. Throws ConfigError when news is disabled.
std::vector<NewsEvent> generate_daily_news(int day, const NewsConfig& config, const Catalog& catalog, Engine& rng,
                                           std::int64_t& next_event_id);

bool covers(const NewsEvent& event, const Catalog& catalog, std::size_t sku);

/// Sum of sign * magnitude over demand-side events covering the SKU.
double demand_delta(const Catalog& catalog, std::size_t sku, std::span<const NewsEvent> active);

/// Product over supply-side events covering the SKU of (1 + sign * magnitude),
/// each factor floored at 0.05.
double supply_multiplier(const Catalog& catalog, std::size_t sku, std::span<const NewsEvent> active);

/// Decrements every ttl; drops events that reach zero.
std::vector<NewsEvent> tick_ttl(std::vector<NewsEvent> active);

Json to_json(const NewsEvent& event);
NewsEvent news_event_from_json(const Json& j);

}  // namespace retail

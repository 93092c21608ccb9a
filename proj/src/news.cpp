#include "retail/news.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "retail/errors.hpp"

namespace retail {

std::string_view to_string(NewsScope scope) {
    switch (scope) {
    case NewsScope::macro: return "macro";
    case NewsScope::category: return "category";
    case NewsScope::product: return "product";
    case NewsScope::neutral: return "neutral";
    }
    return "neutral";
}

std::string_view to_string(NewsSide side) {
    switch (side) {
    case NewsSide::demand: return "demand";
    case NewsSide::supply: return "supply";
    case NewsSide::both: return "both";
    }
    return "demand";
}

namespace {

NewsScope parse_scope(const std::string& s) {
    if (s == "macro") return NewsScope::macro;
    if (s == "category") return NewsScope::category;
    if (s == "product") return NewsScope::product;
    if (s == "neutral") return NewsScope::neutral;
    throw ArgumentError(fmt::format("unknown news scope '{}'", s));
}

NewsSide parse_side(const std::string& s) {
    if (s == "demand") return NewsSide::demand;
    if (s == "supply") return NewsSide::supply;
    if (s == "both") return NewsSide::both;
    throw ArgumentError(fmt::format("unknown news side '{}'", s));
}

constexpr std::array<std::string_view, 6> kNeutralTexts{
    "Local council approves repaving of the downtown shopping district.",
    "Regional weather service forecasts typical conditions for the week.",
    "Store association hosts its annual community charity drive.",
    "Retail analysts publish their quarterly industry overview with no major surprises.",
    "City announces extended hours for the public library branch near the store.",
    "Trade magazine profiles family-owned grocers in the metro area.",
};

std::string subject_of(const NewsEvent& e, const Catalog& catalog) {
    switch (e.scope) {
    case NewsScope::macro: return "the regional economy";
    case NewsScope::category: {
        std::string label = *e.target;
        std::replace(label.begin(), label.end(), '_', ' ');
        return fmt::format("the {} category", label);
    }
    case NewsScope::product: {
        auto j = catalog.find(*e.target);
        return j ? fmt::format("{} (SKU {})", catalog.sku(*j).description, *e.target) : *e.target;
    }
    case NewsScope::neutral: break;
    }
    return {};
}

std::string render_text(const NewsEvent& e, const Catalog& catalog) {
    if (e.scope == NewsScope::neutral)
        return std::string(kNeutralTexts[static_cast<std::size_t>(e.event_id) % kNeutralTexts.size()]);
    const std::string subject = subject_of(e, catalog);
    const bool up = e.sign > 0;
    switch (e.side) {
    case NewsSide::demand:
        return up ? fmt::format("Shoppers show growing interest in {}; analysts expect stronger sales.", subject)
                  : fmt::format("Consumer sentiment toward {} weakens; analysts expect softer sales.", subject);
    case NewsSide::supply:
        return up ? fmt::format("Supply disruptions hit {}; wholesalers warn of higher procurement costs.", subject)
                  : fmt::format("Abundant supply for {}; wholesalers signal lower procurement costs.", subject);
    case NewsSide::both:
        return up ? fmt::format("Demand surge for {} strains suppliers; both shelf demand and wholesale costs climb.",
                                subject)
                  : fmt::format("Slump around {}: buyers pull back and wholesale costs fall.", subject);
    }
    return subject;
}

}  // namespace

std::vector<NewsEvent> generate_daily_news(int day, const NewsConfig& config, const Catalog& catalog, Engine& rng,
                                           std::int64_t& next_event_id) {
    if (!config.enabled) throw ConfigError("news generation is disabled");
    if (catalog.size() == 0) throw ArgumentError("news generation needs a non-empty catalog");
    const auto& r = config.sample_ratios;
    const double total = r.sum();

    std::vector<NewsEvent> events;
    events.reserve(static_cast<std::size_t>(config.daily_count));
    for (int k = 0; k < config.daily_count; ++k) {
        NewsEvent e;
        e.event_id = next_event_id++;
        e.created_day = day;

        // Draw order per event: mode, ttl, then (non-neutral) sign, side, target, magnitude.
        const double u = draw::uniform_real(rng, 0.0, total);
        double weight = 0.0;
        if (u < r.neutral) {
            e.scope = NewsScope::neutral;
            weight = config.mode_weights.neutral;
        } else if (u < r.neutral + r.single_category) {
            e.scope = NewsScope::category;
            weight = config.mode_weights.single_category;
        } else if (u < r.neutral + r.single_category + r.macro_all) {
            e.scope = NewsScope::macro;
            weight = config.mode_weights.macro_all;
        } else {
            e.scope = NewsScope::product;
            weight = config.mode_weights.sku_level;
        }
        e.ttl = static_cast<int>(draw::uniform_int(rng, config.ttl_min, config.ttl_max));

        if (e.scope != NewsScope::neutral) {
            e.sign = draw::uniform_int(rng, 0, 1) == 0 ? -1 : 1;
            e.side = static_cast<NewsSide>(draw::uniform_int(rng, 0, 2));
            if (e.scope == NewsScope::category) {
                const auto c = draw::uniform_int(rng, 0, static_cast<std::int64_t>(catalog.categories().size()) - 1);
                e.target = catalog.categories()[static_cast<std::size_t>(c)];
            } else if (e.scope == NewsScope::product) {
                const auto j = draw::uniform_int(rng, 0, static_cast<std::int64_t>(catalog.size()) - 1);
                e.target = catalog.sku(static_cast<std::size_t>(j)).sku_id;
            }
            e.magnitude = config.base_scale * weight * draw::unit_open_closed(rng);
        }
        e.text = render_text(e, catalog);
        events.push_back(std::move(e));
    }
    return events;
}

bool covers(const NewsEvent& event, const Catalog& catalog, std::size_t sku) {
    switch (event.scope) {
    case NewsScope::macro: return true;
    case NewsScope::category: return event.target && catalog.categories()[catalog.category_of(sku)] == *event.target;
    case NewsScope::product: return event.target && catalog.sku(sku).sku_id == *event.target;
    case NewsScope::neutral: return false;
    }
    return false;
}

double demand_delta(const Catalog& catalog, std::size_t sku, std::span<const NewsEvent> active) {
    double delta = 0.0;
    for (const auto& e : active) {
        if (e.side == NewsSide::supply || !covers(e, catalog, sku)) continue;
        delta += e.sign * e.magnitude;
    }
    return delta;
}

double supply_multiplier(const Catalog& catalog, std::size_t sku, std::span<const NewsEvent> active) {
    double m = 1.0;
    for (const auto& e : active) {
        if (e.side == NewsSide::demand || !covers(e, catalog, sku)) continue;
        m *= std::max(0.05, 1.0 + e.sign * e.magnitude);
    }
    return m;
}

std::vector<NewsEvent> tick_ttl(std::vector<NewsEvent> active) {
    for (auto& e : active) --e.ttl;
    std::erase_if(active, [](const NewsEvent& e) { return e.ttl <= 0; });
    return active;
}

Json to_json(const NewsEvent& e) {
    Json j;
    j["event_id"] = e.event_id;
    j["scope"] = to_string(e.scope);
    j["target"] = e.target ? Json(*e.target) : Json(nullptr);
    j["side"] = to_string(e.side);
    j["sign"] = e.sign;
    j["magnitude"] = e.magnitude;
    j["text"] = e.text;
    j["ttl"] = e.ttl;
    j["created_day"] = e.created_day;
    return j;
}

NewsEvent news_event_from_json(const Json& j) {
    NewsEvent e;
    e.event_id = j.at("event_id").get<std::int64_t>();
    e.scope = parse_scope(j.at("scope").get<std::string>());
    if (!j.at("target").is_null()) e.target = j.at("target").get<std::string>();
    e.side = parse_side(j.at("side").get<std::string>());
    e.sign = j.at("sign").get<int>();
    e.magnitude = j.at("magnitude").get<double>();
    e.text = j.at("text").get<std::string>();
    e.ttl = j.at("ttl").get<int>();
    e.created_day = j.at("created_day").get<int>();
    return e;
}

}  // namespace retail

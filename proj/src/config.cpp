#include "retail/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "retail/calendar.hpp"
#include "retail/errors.hpp"

namespace retail {

namespace {

const std::vector<std::string> kEasyCategories{"Bathroom_Tissues", "Canned_Soup", "Cigarettes", "Front_end_candies",
                                               "Soft_Drinks"};

void use_standard_sizes(CatalogConfig& c) {
    c.skus_per_category.clear();
    for (const auto& [name, count] : standard_categories())
        if (std::find(c.categories.begin(), c.categories.end(), name) != c.categories.end())
            c.skus_per_category[name] = count;
}

/// Reads keys from one JSON object and rejects anything left unread.
class ObjectReader {
public:
    ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError(fmt::format("{} must be an object", path_.empty() ? "config" : path_));
    }

    template <typename T>
    void read(std::string_view key, T& out) {
        auto it = j_.find(key);
        if (it == j_.end()) return;
        seen_.insert(std::string(key));
        try {
            out = it->template get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError(fmt::format("{} has the wrong type", name(key)));
        }
    }

    void read_money(std::string_view key, Money& out) {
        double v = out.to_real();
        read(key, v);
        out = Money::from_real(v);
    }

    const Json* child(std::string_view key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        seen_.insert(std::string(key));
        return &*it;
    }

    std::string name(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

    void finish() const {
        for (const auto& [key, _] : j_.items())
            if (!seen_.contains(key)) throw ConfigError(fmt::format("unknown config key '{}'", name(key)));
    }

private:
    const Json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

Json mode_table_json(const NewsModeTable& t) {
    return Json{{"neutral", t.neutral}, {"single_category", t.single_category}, {"macro_all", t.macro_all},
                {"sku_level", t.sku_level}};
}

NewsModeTable read_mode_table(const Json& j, const std::string& path, NewsModeTable t) {
    ObjectReader r(j, path);
    r.read("neutral", t.neutral);
    r.read("single_category", t.single_category);
    r.read("macro_all", t.macro_all);
    r.read("sku_level", t.sku_level);
    r.finish();
    return t;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"easy", "middle", "hard"};
    return names;
}

EpisodeConfig preset_config(std::string_view name) {
    EpisodeConfig c;
    c.name = std::string(name);
    c.catalog.category_effect = -0.2;
    if (name == "easy") {
        c.initial_funds = Money::from_cents(1'000'000);
        c.daily_rent = Money::from_cents(25'000);
        c.inventory_capacity = 10'000;
        c.catalog.categories = kEasyCategories;
        c.traffic.base = 600.0;
        c.calibration_target = 400.0;
    } else if (name == "middle" || name == "hard") {
        c.initial_funds = Money::from_cents(5'000'000);
        c.daily_rent = Money::from_cents(100'000);
        c.inventory_capacity = 40'000;
        for (const auto& [cat, _] : standard_categories()) c.catalog.categories.push_back(cat);
        c.traffic.base = 2400.0;
        c.calibration_target = 1600.0;
        if (name == "hard") {
            c.news.enabled = true;
            c.news.daily_count = 20;
            c.news.base_scale = 0.4;
            c.news.seed = 42;
        }
    } else {
        throw ConfigError(fmt::format("unknown preset '{}' (expected easy, middle or hard)", name));
    }
    use_standard_sizes(c.catalog);
    return c;
}

void validate(const EpisodeConfig& c) {
    auto fail = [](std::string msg) { throw ConfigError(std::move(msg)); };
    if (c.initial_funds <= Money{}) fail("initial_funds must be positive");
    if (c.daily_rent <= Money{}) fail("daily_rent must be positive");
    if (c.inventory_capacity <= 0) fail("inventory_capacity must be positive");
    if (c.max_days < 1) fail("max_days must be at least 1");
    if (c.call_budget < 1) fail("call_budget must be at least 1");
    if (!Calendar::parse_date(c.epoch_date)) fail(fmt::format("epoch_date '{}' is not a valid date", c.epoch_date));

    const auto& cat = c.catalog;
    if (cat.categories.empty()) fail("categories must not be empty");
    std::set<std::string> unique(cat.categories.begin(), cat.categories.end());
    if (unique.size() != cat.categories.size()) fail("categories contain duplicates");
    for (const auto& [name, n] : cat.skus_per_category)
        if (n < 1) fail(fmt::format("skus_per_category.{} must be at least 1", name));
    if (cat.default_skus_per_category < 1) fail("default_skus_per_category must be at least 1");
    if (!(cat.alpha_min <= cat.alpha_max)) fail("alpha range is inverted");
    if (!(cat.beta_min <= cat.beta_max) || !(cat.beta_max < 0.0)) fail("beta range must be negative and ordered");
    if (cat.shelf_life_min < 1 || cat.shelf_life_min > cat.shelf_life_max) fail("shelf life range is invalid");
    if (!(cat.price_min > 0.0) || cat.price_min > cat.price_max) fail("price range is invalid");

    if (c.review_ratio < 0.0 || c.review_ratio > 1.0) fail("review_ratio must lie in [0, 1]");
    if (c.return_base < 0.0 || c.return_base > 1.0) fail("return_base must lie in [0, 1]");
    if (c.review_weight < 0.0) fail("review_weight must be non-negative");
    if (c.review_window < 1) fail("review_window must be at least 1");

    const auto& n = c.news;
    for (double v : {n.sample_ratios.neutral, n.sample_ratios.single_category, n.sample_ratios.macro_all,
                     n.sample_ratios.sku_level, n.mode_weights.neutral, n.mode_weights.single_category,
                     n.mode_weights.macro_all, n.mode_weights.sku_level})
        if (v < 0.0) fail("news ratios and weights must be non-negative");
    if (std::abs(n.sample_ratios.sum() - 1.0) > 1e-9) fail("news sample_ratios must sum to 1");
    if (n.daily_count < 0) fail("news daily_count must be non-negative");
    if (n.base_scale < 0.0) fail("news base_scale must be non-negative");
    if (n.ttl_min < 1 || n.ttl_min > n.ttl_max) fail("news ttl range is invalid");

    if (!(c.traffic.base > 0.0)) fail("traffic base must be positive");
    for (double f : c.traffic.weekday_factors)
        if (f < 0.0) fail("traffic weekday_factors must be non-negative");
    const double mean_traffic = std::round(c.traffic.base * c.traffic.mean_factor());
    if (c.calibration_target && !(*c.calibration_target > 0.0 && *c.calibration_target < mean_traffic))
        fail("calibration target must lie in (0, mean daily traffic)");

    if (c.heuristic.price_floor <= 0.0 || c.heuristic.price_floor > c.heuristic.price_cap)
        fail("heuristic price bounds are invalid");
    if (c.validator.quantity_flag_fraction <= 0.0) fail("validator quantity_flag_fraction must be positive");
}

Json to_json(const EpisodeConfig& c) {
    Json j;
    j["name"] = c.name;
    j["seed"] = c.seed;
    j["max_days"] = c.max_days;
    j["epoch_date"] = c.epoch_date;
    j["initial_funds"] = c.initial_funds;
    j["daily_rent"] = c.daily_rent;
    j["inventory_capacity"] = c.inventory_capacity;
    j["categories"] = c.catalog.categories;
    j["skus_per_category"] = c.catalog.skus_per_category;
    j["category_effect"] = c.catalog.category_effect;
    j["category_effects"] = c.catalog.category_effects;
    j["catalog_path"] = c.catalog_path ? Json(*c.catalog_path) : Json(nullptr);
    j["synthetic"] = {
        {"default_skus_per_category", c.catalog.default_skus_per_category},
        {"gamma_within", c.catalog.gamma_within},
        {"alpha_min", c.catalog.alpha_min},
        {"alpha_max", c.catalog.alpha_max},
        {"beta_min", c.catalog.beta_min},
        {"beta_max", c.catalog.beta_max},
        {"shelf_life_min", c.catalog.shelf_life_min},
        {"shelf_life_max", c.catalog.shelf_life_max},
        {"price_min", c.catalog.price_min},
        {"price_max", c.catalog.price_max},
    };
    j["calibration_target"] = c.calibration_target ? Json(*c.calibration_target) : Json(nullptr);
    j["review_enabled"] = c.review_enabled;
    j["review_ratio"] = c.review_ratio;
    j["review_weight"] = c.review_weight;
    j["review_window"] = c.review_window;
    j["return_base"] = c.return_base;
    j["news"] = {
        {"enabled", c.news.enabled},
        {"daily_count", c.news.daily_count},
        {"base_scale", c.news.base_scale},
        {"sample_ratios", mode_table_json(c.news.sample_ratios)},
        {"mode_weights", mode_table_json(c.news.mode_weights)},
        {"seed", c.news.seed ? Json(*c.news.seed) : Json(nullptr)},
        {"ttl_min", c.news.ttl_min},
        {"ttl_max", c.news.ttl_max},
    };
    j["traffic"] = {{"base", c.traffic.base}, {"weekday_factors", c.traffic.weekday_factors}};
    j["call_budget"] = c.call_budget;
    j["validator"] = {{"price_flag_threshold", c.validator.price_flag_threshold},
                      {"quantity_flag_fraction", c.validator.quantity_flag_fraction}};
    j["heuristic"] = {
        {"cover_days", c.heuristic.cover_days},
        {"markup", c.heuristic.markup},
        {"quality_cost_tradeoff", c.heuristic.quality_cost_tradeoff},
        {"price_floor", c.heuristic.price_floor},
        {"price_cap", c.heuristic.price_cap},
        {"rent_reserve_days", c.heuristic.rent_reserve_days},
    };
    return j;
}

EpisodeConfig config_from_json(const Json& j) {
    EpisodeConfig c;
    ObjectReader r(j, "");
    r.read("name", c.name);
    r.read("seed", c.seed);
    r.read("max_days", c.max_days);
    r.read("epoch_date", c.epoch_date);
    r.read_money("initial_funds", c.initial_funds);
    r.read_money("daily_rent", c.daily_rent);
    r.read("inventory_capacity", c.inventory_capacity);
    r.read("categories", c.catalog.categories);
    r.read("skus_per_category", c.catalog.skus_per_category);
    r.read("category_effects", c.catalog.category_effects);
    if (const Json* e = r.child("category_effect")) {
        // A per-category object is accepted here as a shorthand.
        if (e->is_object()) {
            for (const auto& [cat, v] : e->get<std::map<std::string, double>>()) c.catalog.category_effects[cat] = v;
        } else if (e->is_number()) {
            c.catalog.category_effect = e->get<double>();
        } else {
            throw ConfigError("category_effect must be a number or an object");
        }
    }
    if (const Json* p = r.child("catalog_path"); p && !p->is_null()) c.catalog_path = p->get<std::string>();
    if (const Json* s = r.child("synthetic")) {
        ObjectReader sr(*s, "synthetic");
        sr.read("default_skus_per_category", c.catalog.default_skus_per_category);
        sr.read("gamma_within", c.catalog.gamma_within);
        sr.read("alpha_min", c.catalog.alpha_min);
        sr.read("alpha_max", c.catalog.alpha_max);
        sr.read("beta_min", c.catalog.beta_min);
        sr.read("beta_max", c.catalog.beta_max);
        sr.read("shelf_life_min", c.catalog.shelf_life_min);
        sr.read("shelf_life_max", c.catalog.shelf_life_max);
        sr.read("price_min", c.catalog.price_min);
        sr.read("price_max", c.catalog.price_max);
        sr.finish();
    }
    if (const Json* t = r.child("calibration_target")) {
        if (t->is_null()) {
            c.calibration_target.reset();
        } else if (t->is_number()) {
            c.calibration_target = t->get<double>();
        } else {
            throw ConfigError("calibration_target must be a number or null");
        }
    }
    r.read("review_enabled", c.review_enabled);
    r.read("review_ratio", c.review_ratio);
    r.read("review_weight", c.review_weight);
    r.read("review_window", c.review_window);
    r.read("return_base", c.return_base);
    if (const Json* n = r.child("news")) {
        ObjectReader nr(*n, "news");
        nr.read("enabled", c.news.enabled);
        nr.read("daily_count", c.news.daily_count);
        nr.read("base_scale", c.news.base_scale);
        if (const Json* s = nr.child("sample_ratios"))
            c.news.sample_ratios = read_mode_table(*s, "news.sample_ratios", c.news.sample_ratios);
        if (const Json* w = nr.child("mode_weights"))
            c.news.mode_weights = read_mode_table(*w, "news.mode_weights", c.news.mode_weights);
        if (const Json* s = nr.child("seed")) {
            if (s->is_null()) {
                c.news.seed.reset();
            } else if (s->is_number_unsigned() || s->is_number_integer()) {
                c.news.seed = s->get<std::uint64_t>();
            } else {
                throw ConfigError("news.seed must be an integer or null");
            }
        }
        nr.read("ttl_min", c.news.ttl_min);
        nr.read("ttl_max", c.news.ttl_max);
        nr.finish();
    }
    if (const Json* t = r.child("traffic")) {
        ObjectReader tr(*t, "traffic");
        tr.read("base", c.traffic.base);
        tr.read("weekday_factors", c.traffic.weekday_factors);
        tr.finish();
    }
    r.read("call_budget", c.call_budget);
    if (const Json* v = r.child("validator")) {
        ObjectReader vr(*v, "validator");
        vr.read("price_flag_threshold", c.validator.price_flag_threshold);
        vr.read("quantity_flag_fraction", c.validator.quantity_flag_fraction);
        vr.finish();
    }
    if (const Json* h = r.child("heuristic")) {
        ObjectReader hr(*h, "heuristic");
        hr.read("cover_days", c.heuristic.cover_days);
        hr.read("markup", c.heuristic.markup);
        hr.read("quality_cost_tradeoff", c.heuristic.quality_cost_tradeoff);
        hr.read("price_floor", c.heuristic.price_floor);
        hr.read("price_cap", c.heuristic.price_cap);
        hr.read("rent_reserve_days", c.heuristic.rent_reserve_days);
        hr.finish();
    }
    r.finish();
    validate(c);
    return c;
}

EpisodeConfig load_config(const std::filesystem::path& path, std::string_view base_preset) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    if (auto it = j.find("preset"); it != j.end()) {
        if (!it->is_string()) throw ConfigError("preset must be a string");
        Json base = to_json(preset_config(it->get<std::string>()));
        j.erase("preset");
        base.merge_patch(j);
        j = std::move(base);
    } else if (!base_preset.empty()) {
        Json base = to_json(preset_config(base_preset));
        base.merge_patch(j);
        j = std::move(base);
    }
    return config_from_json(j);
}

}  // namespace retail

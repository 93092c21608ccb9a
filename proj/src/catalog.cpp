#include "retail/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "retail/demand.hpp"
#include "retail/errors.hpp"
#include "retail/rng.hpp"

namespace retail {

const std::vector<std::pair<std::string, int>>& standard_categories() {
    static const std::vector<std::pair<std::string, int>> table{
        {"Bathroom_Tissues", 5}, {"Beer", 5},           {"Bottled_Juices", 5},   {"Canned_Soup", 5},
        {"Canned_Tuna", 5},      {"Cereals", 5},        {"Cheeses", 5},          {"Cigarettes", 5},
        {"Cookies", 5},          {"Crackers", 5},       {"Dish_Detergent", 4},   {"Fabric_Softeners", 4},
        {"Front_end_candies", 5}, {"Frozen_Entrees", 5}, {"Frozen_Juices", 5},   {"Oatmeal", 4},
        {"Paper_Towels", 5},     {"Snack_Crackers", 4}, {"Soft_Drinks", 5},      {"Toothpastes", 5},
    };
    return table;
}

Catalog::Catalog(std::vector<SkuSpec> skus, std::vector<std::string> categories, DemandParams demand)
    : skus_(std::move(skus)), categories_(std::move(categories)), demand_(std::move(demand)) {
    const std::size_t n = skus_.size();
    std::unordered_map<std::string, std::size_t> cat_index;
    for (std::size_t c = 0; c < categories_.size(); ++c) {
        if (!cat_index.emplace(categories_[c], c).second)
            throw ValidationError(fmt::format("duplicate category '{}'", categories_[c]));
    }
    if (demand_.alpha.size() != n || demand_.beta.size() != n || demand_.gamma.size() != n * n ||
        demand_.category_effect.size() != categories_.size())
        throw ValidationError("demand parameter dimensions do not match the catalog");

    sku_category_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& s = skus_[j];
        if (!sku_index_.emplace(s.sku_id, j).second)
            throw ValidationError(fmt::format("duplicate sku_id '{}'", s.sku_id));
        auto it = cat_index.find(s.category_id);
        if (it == cat_index.end())
            throw ValidationError(fmt::format("SKU {} has unknown category '{}'", s.sku_id, s.category_id));
        sku_category_[j] = it->second;
        if (s.shelf_life_days < 1) throw ValidationError(fmt::format("SKU {} shelf life must be >= 1", s.sku_id));
        if (s.base_price.cents() <= 0) throw ValidationError(fmt::format("SKU {} base price must be > 0", s.sku_id));
        if (!(demand_.beta[j] < 0.0)) throw ValidationError(fmt::format("SKU {} beta must be negative", s.sku_id));
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double g = demand_.gamma_at(j, i);
            if (g != 0.0 && (i == j || sku_category_[i] != sku_category_[j]))
                throw ValidationError("substitution coefficient outside a category block");
        }
    }
}

std::optional<std::size_t> Catalog::find(std::string_view sku_id) const {
    auto it = sku_index_.find(std::string(sku_id));
    if (it == sku_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Catalog::find_category(std::string_view category_id) const {
    auto it = std::find(categories_.begin(), categories_.end(), category_id);
    if (it == categories_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - categories_.begin());
}

void Catalog::shift_alpha(double delta) {
    for (double& a : demand_.alpha) a += delta;
}

namespace {

double effect_for(const CatalogConfig& config, const std::string& category) {
    auto it = config.category_effects.find(category);
    return it == config.category_effects.end() ? config.category_effect : it->second;
}

std::vector<double> block_gamma(const std::vector<SkuSpec>& skus, double within) {
    const std::size_t n = skus.size();
    std::vector<double> gamma(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (i != j && skus[i].category_id == skus[j].category_id) gamma[j * n + i] = within;
    return gamma;
}

// Minimal RFC 4180 field splitter (quoted fields, doubled quotes).
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

template <typename T>
T parse_number(const std::string& text, const char* column, std::size_t line_no) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw SchemaError(fmt::format("line {}: column {} is not a valid number: '{}'", line_no, column, text));
    return value;
}

}  // namespace

Catalog load_catalog(const std::filesystem::path& path, const CatalogConfig& config) {
    std::ifstream in(path);
    if (!in) throw SchemaError(fmt::format("cannot open catalog file {}", path.string()));

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("catalog file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const auto header = split_csv_line(line);
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    };
    const char* required[] = {"sku_id", "description", "category", "shelf_life_days", "base_price"};
    std::size_t idx[5];
    for (int k = 0; k < 5; ++k) {
        auto c = column(required[k]);
        if (!c) throw SchemaError(fmt::format("catalog file is missing column '{}'", required[k]));
        idx[k] = *c;
    }
    const auto alpha_col = column("alpha");
    const auto beta_col = column("beta");

    const std::set<std::string> wanted(config.categories.begin(), config.categories.end());
    std::vector<SkuSpec> skus;
    std::vector<double> alpha, beta;
    std::set<std::string> seen_ids;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw SchemaError(fmt::format("line {}: expected {} fields, got {}", line_no, header.size(), fields.size()));
        SkuSpec s;
        s.sku_id = fields[idx[0]];
        s.description = fields[idx[1]];
        s.category_id = fields[idx[2]];
        s.shelf_life_days = parse_number<int>(fields[idx[3]], "shelf_life_days", line_no);
        s.base_price = Money::from_real(parse_number<double>(fields[idx[4]], "base_price", line_no));
        if (s.sku_id.empty()) throw SchemaError(fmt::format("line {}: empty sku_id", line_no));
        if (!seen_ids.insert(s.sku_id).second)
            throw ValidationError(fmt::format("duplicate sku_id '{}' at line {}", s.sku_id, line_no));
        if (!wanted.contains(s.category_id)) continue;
        alpha.push_back(alpha_col ? parse_number<double>(fields[*alpha_col], "alpha", line_no)
                                  : 0.5 * (config.alpha_min + config.alpha_max));
        beta.push_back(beta_col ? parse_number<double>(fields[*beta_col], "beta", line_no)
                                : 0.5 * (config.beta_min + config.beta_max));
        skus.push_back(std::move(s));
    }

    for (const auto& cat : config.categories) {
        bool present = std::any_of(skus.begin(), skus.end(), [&](const SkuSpec& s) { return s.category_id == cat; });
        if (!present) throw ValidationError(fmt::format("configured category '{}' has no rows in {}", cat, path.string()));
    }

    DemandParams demand;
    demand.alpha = std::move(alpha);
    demand.beta = std::move(beta);
    demand.gamma = block_gamma(skus, config.gamma_within);
    for (const auto& cat : config.categories) demand.category_effect.push_back(effect_for(config, cat));
    return Catalog(std::move(skus), config.categories, std::move(demand));
}

Catalog generate_synthetic_catalog(const CatalogConfig& config, std::uint64_t seed) {
    if (config.categories.empty()) throw ConfigError("catalog config names no categories");

    std::vector<SkuSpec> skus;
    DemandParams demand;
    std::set<std::string> ids;
    for (const auto& cat : config.categories) {
        auto it = config.skus_per_category.find(cat);
        const int count = it == config.skus_per_category.end() ? config.default_skus_per_category : it->second;
        if (count < 1) throw ConfigError(fmt::format("category '{}' needs at least one SKU", cat));

        // Per-category stream: a category's SKUs do not depend on which other
        // categories are enabled.
        Engine rng(stream_seed(seed, "catalog/" + cat));
        std::string label = cat;
        std::replace(label.begin(), label.end(), '_', ' ');
        for (int k = 0; k < count; ++k) {
            SkuSpec s;
            do {
                s.sku_id = fmt::format("{:010d}", draw::uniform_int(rng, 1'000'000'000LL, 9'999'999'999LL));
            } while (!ids.insert(s.sku_id).second);
            s.description = fmt::format("{} item {}", label, k + 1);
            s.category_id = cat;
            demand.alpha.push_back(draw::uniform_real(rng, config.alpha_min, config.alpha_max));
            demand.beta.push_back(draw::uniform_real(rng, config.beta_min, config.beta_max));
            s.shelf_life_days = static_cast<int>(draw::uniform_int(rng, config.shelf_life_min, config.shelf_life_max));
            s.base_price = Money::from_real(draw::uniform_real(rng, config.price_min, config.price_max));
            if (s.base_price.cents() <= 0) s.base_price = Money::from_cents(1);
            skus.push_back(std::move(s));
        }
        demand.category_effect.push_back(effect_for(config, cat));
    }
    demand.gamma = block_gamma(skus, config.gamma_within);
    return Catalog(std::move(skus), config.categories, std::move(demand));
}

double expected_daily_sales(const Catalog& catalog, int traffic) {
    std::vector<Money> prices;
    prices.reserve(catalog.size());
    for (const auto& s : catalog.skus()) prices.push_back(s.base_price);
    const auto probs = choice_probabilities(compute_utilities(catalog, prices));
    double total = 0.0;
    for (double p : probs.sku) total += p;
    return total * traffic;
}

Catalog calibrate_alpha(Catalog catalog, double target_daily_sales, int traffic) {
    if (traffic <= 0) throw CalibrationError("calibration traffic must be positive");
    if (!(target_daily_sales > 0.0) || !(target_daily_sales < traffic))
        throw CalibrationError(fmt::format("target {} is outside (0, {})", target_daily_sales, traffic));

    constexpr double lo_bound = -20.0;
    constexpr double hi_bound = 20.0;
    constexpr double grid = 0.25;
    auto sales_at = [&](double delta) {
        Catalog shifted = catalog;
        shifted.shift_alpha(delta);
        return expected_daily_sales(shifted, traffic);
    };

    // Substitution makes total sales non-monotone for very large offsets, so
    // scan upward for the first bracket instead of bisecting the full range.
    double lo = lo_bound;
    if (sales_at(lo) >= target_daily_sales)
        throw CalibrationError(fmt::format("target {} is below the minimum reachable sales", target_daily_sales));
    double hi = lo;
    bool bracketed = false;
    while (hi < hi_bound) {
        const double next = std::min(hi + grid, hi_bound);
        if (sales_at(next) >= target_daily_sales) {
            lo = hi;
            hi = next;
            bracketed = true;
            break;
        }
        hi = next;
    }
    if (!bracketed) throw CalibrationError(fmt::format("target {} is unreachable", target_daily_sales));

    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (sales_at(mid) < target_daily_sales ? lo : hi) = mid;
    }
    const double delta = 0.5 * (lo + hi);
    if (std::abs(sales_at(delta) - target_daily_sales) > 0.5)
        throw CalibrationError("calibration did not converge");
    catalog.shift_alpha(delta);
    return catalog;
}

}  // namespace retail

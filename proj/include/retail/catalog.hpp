#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "retail/money.hpp"

namespace retail {

struct SkuSpec {
    std::string sku_id;
    std::string description;
    std::string category_id;
    int shelf_life_days = 1;
    Money base_price;
    /// Mean supplier base cost; filled in by generate_suppliers.
    Money reference_cost;
};

/// Logit demand parameters. gamma is a dense row-major |J|x|J| matrix whose
/// (j, i) entry is nonzero only for distinct SKUs of the same category.
struct DemandParams {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::vector<double> category_effect;  ///< indexed by category position

    double gamma_at(std::size_t j, std::size_t i) const { return gamma[j * alpha.size() + i]; }
};

struct CatalogConfig {
    std::vector<std::string> categories;
    /// Per-category SKU counts for the synthetic generator; categories not
    /// listed get default_skus_per_category.
    std::map<std::string, int> skus_per_category;
    int default_skus_per_category = 5;
    /// Additive utility shift per category; missing entries use category_effect.
    std::map<std::string, double> category_effects;
    double category_effect = 0.0;
    double gamma_within = -0.01;

    double alpha_min = -4.5;
    double alpha_max = -3.0;
    double beta_min = -0.8;
    double beta_max = -0.2;
    int shelf_life_min = 7;
    int shelf_life_max = 60;
    double price_min = 0.5;
    double price_max = 8.0;

    bool operator==(const CatalogConfig&) const = default;
};

/// The 20-category universe with its default SKU counts (96 in total).
const std::vector<std::pair<std::string, int>>& standard_categories();

class Catalog {
public:
    Catalog() = default;
    /// Validates every catalog invariant; throws ValidationError.
    Catalog(std::vector<SkuSpec> skus, std::vector<std::string> categories, DemandParams demand);

    const std::vector<SkuSpec>& skus() const { return skus_; }
    const SkuSpec& sku(std::size_t j) const { return skus_[j]; }
    std::size_t size() const { return skus_.size(); }
    const std::vector<std::string>& categories() const { return categories_; }
    const DemandParams& demand() const { return demand_; }

    std::optional<std::size_t> find(std::string_view sku_id) const;
    std::optional<std::size_t> find_category(std::string_view category_id) const;
    std::size_t category_of(std::size_t j) const { return sku_category_[j]; }

    void set_reference_cost(std::size_t j, Money cost) { skus_[j].reference_cost = cost; }
    /// Adds the same offset to every alpha.
    void shift_alpha(double delta);

private:
    std::vector<SkuSpec> skus_;
    std::vector<std::string> categories_;
    DemandParams demand_;
    std::vector<std::size_t> sku_category_;
    std::unordered_map<std::string, std::size_t> sku_index_;
};

/// Reads `sku_id,description,category,shelf_life_days,base_price` rows (plus
/// optional alpha/beta columns). Rows of categories outside config.categories
/// are skipped; every configured category must be present in the file.
Catalog load_catalog(const std::filesystem::path& path, const CatalogConfig& config);

Catalog generate_synthetic_catalog(const CatalogConfig& config, std::uint64_t seed);

/// Total expected daily sales at base prices with no review or news effects.
double expected_daily_sales(const Catalog& catalog, int traffic);

/// Shifts every alpha by a common offset so that expected daily sales at base
/// prices land within target +/- 0.5. Throws CalibrationError when the target
/// cannot be reached for offsets in [-20, 20].
Catalog calibrate_alpha(Catalog catalog, double target_daily_sales, int traffic);

}  // namespace retail

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "retail/catalog.hpp"
#include "retail/money.hpp"
#include "retail/rng.hpp"

namespace retail {

struct UtilityVector {
    std::vector<double> raw;
    std::vector<double> delta_reviews;
    std::vector<double> delta_news;
    std::vector<double> substitution;
    std::vector<double> augmented;
};

struct ChoiceProbabilities {
    std::vector<double> sku;  ///< per-SKU purchase probability
    double outside = 1.0;     ///< no-purchase probability
};

struct DemandOutcome {
    std::int64_t traffic = 0;
    std::vector<double> probabilities;
    std::vector<std::int64_t> potential;
    std::vector<std::int64_t> sold;
    std::vector<bool> stockout;
};

struct TrafficConfig {
    double base = 500.0;
    /// Monday ... Sunday multipliers.
    std::array<double, 7> weekday_factors{1.0, 1.0, 1.0, 1.0, 1.0, 1.3, 1.5};

    double mean_factor() const;
    bool operator==(const TrafficConfig&) const = default;
};

/// Poisson(base * weekday_factors[weekday]); weekday 0 = Monday.
std::int64_t sample_traffic(int weekday, const TrafficConfig& config, Engine& rng);

/// Utilities for every SKU. review_deltas/news_deltas are per-SKU shifts
/// (empty spans mean zero). Substitution is a single pass over the
/// pre-substitution utilities. Throws ValidationError on a non-positive price.
UtilityVector compute_utilities(const Catalog& catalog, std::span<const Money> prices,
                                std::span<const double> review_deltas = {},
                                std::span<const double> news_deltas = {});

/// Logit choice with the outside option fixed at utility zero.
ChoiceProbabilities choice_probabilities(std::span<const double> utilities);
inline ChoiceProbabilities choice_probabilities(const UtilityVector& u) { return choice_probabilities(u.augmented); }

/// One Binomial(traffic, p_j) draw per SKU in catalog order, capped by the
/// sellable on-hand units.
DemandOutcome realize_demand(std::int64_t traffic, std::span<const double> probabilities,
                             std::span<const std::int64_t> onhand_sellable, Engine& rng);

}  // namespace retail

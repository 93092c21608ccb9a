#include "retail/demand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "retail/errors.hpp"

namespace retail {

double TrafficConfig::mean_factor() const {
    return std::accumulate(weekday_factors.begin(), weekday_factors.end(), 0.0) / 7.0;
}

std::int64_t sample_traffic(int weekday, const TrafficConfig& config, Engine& rng) {
    const double mean = config.base * config.weekday_factors.at(static_cast<std::size_t>(weekday));
    if (mean <= 0.0) return 0;
    return draw::poisson(rng, mean);
}

UtilityVector compute_utilities(const Catalog& catalog, std::span<const Money> prices,
                                std::span<const double> review_deltas, std::span<const double> news_deltas) {
    const std::size_t n = catalog.size();
    if (prices.size() != n) throw ArgumentError("price vector does not match catalog size");
    const auto& params = catalog.demand();

    UtilityVector u;
    u.raw.resize(n);
    u.delta_reviews.assign(n, 0.0);
    u.delta_news.assign(n, 0.0);
    u.substitution.assign(n, 0.0);
    u.augmented.resize(n);

    std::vector<double> base(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (prices[j].cents() <= 0)
            throw ValidationError(fmt::format("non-positive price for SKU {}", catalog.sku(j).sku_id));
        u.raw[j] = params.alpha[j] + params.beta[j] * prices[j].to_real() +
                   params.category_effect[catalog.category_of(j)];
        if (!review_deltas.empty()) u.delta_reviews[j] = review_deltas[j];
        if (!news_deltas.empty()) u.delta_news[j] = news_deltas[j];
        base[j] = u.raw[j] + u.delta_reviews[j] + u.delta_news[j];
    }

    std::vector<double> exp_base(n);
    std::transform(base.begin(), base.end(), exp_base.begin(), [](double x) { return std::exp(x); });

    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || catalog.category_of(i) != catalog.category_of(j)) continue;
            s += params.gamma_at(j, i) * exp_base[i];
        }
        u.substitution[j] = s;
        u.augmented[j] = base[j] + s;
    }
    return u;
}

ChoiceProbabilities choice_probabilities(std::span<const double> utilities) {
    const double shift = std::max(0.0, utilities.empty() ? 0.0 : *std::max_element(utilities.begin(), utilities.end()));
    ChoiceProbabilities out;
    out.sku.resize(utilities.size());
    const double outside = std::exp(-shift);
    double denom = outside;
    for (std::size_t j = 0; j < utilities.size(); ++j) {
        out.sku[j] = std::exp(utilities[j] - shift);
        denom += out.sku[j];
    }
    for (double& p : out.sku) p /= denom;
    out.outside = outside / denom;
    return out;
}

DemandOutcome realize_demand(std::int64_t traffic, std::span<const double> probabilities,
                             std::span<const std::int64_t> onhand_sellable, Engine& rng) {
    if (probabilities.size() != onhand_sellable.size())
        throw ArgumentError("probabilities and on-hand vectors differ in length");
    const std::size_t n = probabilities.size();
    DemandOutcome out;
    out.traffic = traffic;
    out.probabilities.assign(probabilities.begin(), probabilities.end());
    out.potential.resize(n);
    out.sold.resize(n);
    out.stockout.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.potential[j] = draw::binomial(rng, traffic, probabilities[j]);
        out.sold[j] = std::min(out.potential[j], onhand_sellable[j]);
        out.stockout[j] = out.potential[j] > onhand_sellable[j];
    }
    return out;
}

}  // namespace retail

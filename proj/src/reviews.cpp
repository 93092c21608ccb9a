#include "retail/reviews.hpp"

#include <algorithm>
#include <cmath>

#include "retail/errors.hpp"

namespace retail {

namespace {
constexpr double kRatingSd = 0.7;
constexpr double kRecentWeight = 0.7;
}  // namespace

void ReviewBook::add(std::span<const Review> reviews) {
    for (const auto& r : reviews) {
        reviews_[r.sku].push_back(r);
        sums_[r.sku] += r.rating;
    }
}

RatingAggregate ReviewBook::aggregate(std::size_t sku, int day, int window) const {
    RatingAggregate agg;
    const auto& list = reviews_[sku];
    agg.count = static_cast<std::int64_t>(list.size());
    if (list.empty()) return agg;
    agg.mean_all = static_cast<double>(sums_[sku]) / static_cast<double>(list.size());
    std::int64_t n = 0, sum = 0;
    for (auto it = list.rbegin(); it != list.rend() && it->day > day - window; ++it) {
        if (it->day > day) continue;
        ++n;
        sum += it->rating;
    }
    if (n > 0) agg.mean_recent = static_cast<double>(sum) / static_cast<double>(n);
    return agg;
}

std::vector<Review> ReviewBook::recent(std::size_t sku, int day, int window) const {
    std::vector<Review> out;
    for (const auto& r : reviews_[sku])
        if (r.day > day - window && r.day <= day) out.push_back(r);
    return out;
}

std::vector<Review> generate_reviews(std::span<const SoldChunk> sold, double ratio, int day, Engine& rng) {
    if (ratio < 0.0 || ratio > 1.0) throw ArgumentError("review ratio must lie in [0, 1]");
    std::vector<Review> out;
    for (const auto& chunk : sold) {
        const auto count = draw::binomial(rng, chunk.quantity, ratio);
        for (std::int64_t k = 0; k < count; ++k) {
            const double x = draw::normal(rng, 1.0 + 4.0 * chunk.source_quality, kRatingSd);
            const int rating = static_cast<int>(std::clamp(std::lround(x), 1L, 5L));
            out.push_back(Review{chunk.sku, day, rating, chunk.source_quality});
        }
    }
    return out;
}

std::vector<std::int64_t> generate_returns(std::span<const SoldChunk> sold, std::size_t sku_count, double return_base,
                                           Engine& rng) {
    if (return_base < 0.0 || return_base > 1.0) throw ArgumentError("return base must lie in [0, 1]");
    std::vector<std::int64_t> returns(sku_count, 0);
    for (const auto& chunk : sold) {
        const double p = return_base * (1.0 - chunk.source_quality);
        returns[chunk.sku] += draw::binomial(rng, chunk.quantity, p);
    }
    return returns;
}

double review_delta(const RatingAggregate& aggregate, double weight) {
    if (aggregate.count == 0 || !aggregate.mean_all) return 0.0;
    const double recent = aggregate.mean_recent.value_or(*aggregate.mean_all);
    const double blend = kRecentWeight * recent + (1.0 - kRecentWeight) * *aggregate.mean_all;
    return weight * (blend - 3.0) / 2.0;
}

}  // namespace retail

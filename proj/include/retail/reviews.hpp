#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "retail/inventory.hpp"
#include "retail/rng.hpp"

namespace retail {

struct Review {
    std::size_t sku = 0;
    int day = 0;
    int rating = 3;
    double source_quality = 1.0;

    bool operator==(const Review&) const = default;
};

struct RatingAggregate {
    std::int64_t count = 0;
    std::optional<double> mean_all;
    std::optional<double> mean_recent;  ///< absent when the window holds no reviews
};

/// Review history per SKU.
class ReviewBook {
public:
    ReviewBook() = default;
    explicit ReviewBook(std::size_t sku_count) : reviews_(sku_count), sums_(sku_count, 0) {}

    void add(std::span<const Review> reviews);
    /// Aggregates as seen on `day`; the recent window covers days (day - window, day].
    RatingAggregate aggregate(std::size_t sku, int day, int window) const;
    std::vector<Review> recent(std::size_t sku, int day, int window) const;
    const std::vector<Review>& of(std::size_t sku) const { return reviews_[sku]; }

private:
    std::vector<std::vector<Review>> reviews_;
    std::vector<std::int64_t> sums_;
};

/// Each sold unit yields a review with probability `ratio`; the rating is
/// clamp(round(Normal(1 + 4q, 0.7)), 1, 5) with q the unit's source quality.
std::vector<Review> generate_reviews(std::span<const SoldChunk> sold, double ratio, int day, Engine& rng);

/// Each sold unit is returned with probability return_base * (1 - q).
std::vector<std::int64_t> generate_returns(std::span<const SoldChunk> sold, std::size_t sku_count, double return_base,
                                           Engine& rng);

/// weight * (blend - 3) / 2 with blend = 0.7 * recent + 0.3 * overall mean;
/// zero without reviews. The overall mean stands in for an empty window.
double review_delta(const RatingAggregate& aggregate, double weight);

}  // namespace retail

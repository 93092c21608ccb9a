#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace retail {

/// All randomness flows through this engine type. mt19937_64 output is fixed
/// by the standard; distributions come from Boost.Random, whose algorithms
/// are header-defined and therefore identical across toolchains.
using Engine = std::mt19937_64;

/// Seed of the named substream `name` under `master_seed`.
std::uint64_t stream_seed(std::uint64_t master_seed, std::string_view name);

/// Independent deterministic substreams for one episode. A draw on one stream
/// never perturbs another stream's sequence.
struct RngStreams {
    explicit RngStreams(std::uint64_t master_seed);

    Engine traffic;
    Engine demand;
    Engine leadtime;
    Engine news;
    Engine reviews;
    Engine catalog;

    /// Replace the news stream seed (the news module may carry its own seed).
    void reseed_news(std::uint64_t seed);
};

namespace draw {

/// Uniform integer in [lo, hi].
std::int64_t uniform_int(Engine& rng, std::int64_t lo, std::int64_t hi);
/// Uniform real in [lo, hi).
double uniform_real(Engine& rng, double lo, double hi);
/// Uniform real in (0, 1].
double unit_open_closed(Engine& rng);
std::int64_t poisson(Engine& rng, double mean);
std::int64_t binomial(Engine& rng, std::int64_t trials, double p);
double normal(Engine& rng, double mean, double sd);
bool bernoulli(Engine& rng, double p);

}  // namespace draw

/// Serialized engine state; used for state digests.
std::string engine_state(const Engine& rng);

}  // namespace retail

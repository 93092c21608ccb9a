#include "retail/rng.hpp"

#include <sstream>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace retail {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master_seed, std::string_view name) {
    return splitmix64(splitmix64(master_seed) ^ fnv1a(name));
}

RngStreams::RngStreams(std::uint64_t master_seed)
    : traffic(stream_seed(master_seed, "traffic")),
      demand(stream_seed(master_seed, "demand")),
      leadtime(stream_seed(master_seed, "leadtime")),
      news(stream_seed(master_seed, "news")),
      reviews(stream_seed(master_seed, "reviews")),
      catalog(stream_seed(master_seed, "catalog")) {}

void RngStreams::reseed_news(std::uint64_t seed) { news.seed(stream_seed(seed, "news")); }

namespace draw {

std::int64_t uniform_int(Engine& rng, std::int64_t lo, std::int64_t hi) {
    return boost::random::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double uniform_real(Engine& rng, double lo, double hi) {
    return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

double unit_open_closed(Engine& rng) { return 1.0 - boost::random::uniform_01<double>()(rng); }

std::int64_t poisson(Engine& rng, double mean) {
    return boost::random::poisson_distribution<std::int64_t, double>(mean)(rng);
}

std::int64_t binomial(Engine& rng, std::int64_t trials, double p) {
    if (trials <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    return boost::random::binomial_distribution<std::int64_t, double>(trials, p)(rng);
}

double normal(Engine& rng, double mean, double sd) {
    return boost::random::normal_distribution<double>(mean, sd)(rng);
}

bool bernoulli(Engine& rng, double p) { return boost::random::bernoulli_distribution<double>(p)(rng); }

}  // namespace draw

std::string engine_state(const Engine& rng) {
    std::ostringstream os;
    os << rng;
    return os.str();
}

}  // namespace retail

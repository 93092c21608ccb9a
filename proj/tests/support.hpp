#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "retail/catalog.hpp"
#include "retail/config.hpp"
#include "retail/json.hpp"
#include "retail/session.hpp"

namespace testing {

// Scratch directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("retail_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path_ / name; }
    std::filesystem::path write(const std::string& name, const std::string& text) const {
        std::ofstream(file(name)) << text;
        return file(name);
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Catalog with explicit parameters; SKU ids "S0", "S1", ...
inline retail::Catalog make_catalog(const std::vector<std::string>& sku_categories, const std::vector<double>& alpha,
                                    const std::vector<double>& beta, const std::vector<double>& prices,
                                    double gamma_within = 0.0, std::vector<int> shelf = {}) {
    std::vector<std::string> cats;
    for (const auto& c : sku_categories)
        if (std::find(cats.begin(), cats.end(), c) == cats.end()) cats.push_back(c);
    const std::size_t n = sku_categories.size();
    std::vector<retail::SkuSpec> skus;
    for (std::size_t j = 0; j < n; ++j) {
        retail::SkuSpec s;
        s.sku_id = "S" + std::to_string(j);
        s.description = "item " + std::to_string(j);
        s.category_id = sku_categories[j];
        s.shelf_life_days = shelf.empty() ? 10 : shelf[j];
        s.base_price = retail::Money::from_real(prices[j]);
        s.reference_cost = retail::Money::from_real(prices[j] / 2);
        skus.push_back(s);
    }
    retail::DemandParams d;
    d.alpha = alpha;
    d.beta = beta;
    d.gamma.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (i != j && sku_categories[i] == sku_categories[j]) d.gamma[j * n + i] = gamma_within;
    d.category_effect.assign(cats.size(), 0.0);
    return retail::Catalog(std::move(skus), std::move(cats), std::move(d));
}

// Easy preset with a shorter horizon, for fast engine tests.
inline retail::EpisodeConfig easy(int max_days = 200) {
    auto c = retail::preset_config("easy");
    c.max_days = max_days;
    return c;
}

// Collects the per-day records emitted by a session.
struct RecordLog {
    std::vector<retail::Json> records;
    void attach(retail::Session& s) {
        s.on_record([this](const retail::Json& r) { records.push_back(r); });
    }
};

// Mean and standard error helpers for statistical tests.
inline bool within_sigmas(double observed_mean, double expected_mean, double sd, std::size_t n, double k = 3.0) {
    return std::abs(observed_mean - expected_mean) <= k * sd / std::sqrt(static_cast<double>(n));
}

}  // namespace testing

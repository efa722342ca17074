#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hhfs/dataset.hpp"
#include "hhfs/solution.hpp"

namespace hhfs {

// Sample Pearson coefficient (two-pass, centered). Returns 0 when either
// input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

// |pearson| against the class-1 indicator for two classes; for more classes,
// the class-frequency weighted mean of one-vs-rest magnitudes.
double class_correlation(std::span<const double> feature, std::span<const int> labels,
                         std::size_t class_count);

// Running sums behind the correlation-based subset merit.
// sum_cf and sum_ff are fixed-point (see CorrelationCache::scale()).
struct MeritTerms {
    std::size_t k = 0;
    std::int64_t sum_cf = 0;  // sum of |r_cf| over selected features
    std::int64_t sum_ff = 0;  // sum of |r_ff| over unordered selected pairs
};

// Precomputed |r| between every feature pair and between each feature and the
// class. Alongside the doubles it keeps a fixed-point copy so subset sums are
// exact integers: a merit evaluated incrementally is bit-identical to one
// evaluated from scratch, whatever the summation order.
class CorrelationCache {
public:
    CorrelationCache() = default;
    CorrelationCache(std::size_t n, std::vector<double> feature_feature,
                     std::vector<double> feature_class);

    std::size_t size() const { return n_; }
    double feature_feature(std::size_t i, std::size_t j) const { return ff_[i * n_ + j]; }
    double feature_class(std::size_t i) const { return cf_[i]; }

    // Fixed-point units per 1.0 of correlation.
    double scale() const { return scale_; }

    MeritTerms terms(const FeatureMask& mask) const;

    // Terms after toggling bit j of `mask`, given `current` = terms(mask).
    MeritTerms flipped(const MeritTerms& current, const FeatureMask& mask, std::size_t j) const;

    double merit(const MeritTerms& t) const;

private:
    std::size_t n_ = 0;
    double scale_ = 1.0;
    std::vector<double> ff_;
    std::vector<double> cf_;
    std::vector<std::int64_t> ff_fixed_;
    std::vector<std::int64_t> cf_fixed_;
};

CorrelationCache build_cache(const Dataset& d);

// Hall's merit k * mean(r_cf) / sqrt(k + k(k-1) * mean(r_ff)); zero for an
// empty mask.
double cfs_merit(const FeatureMask& mask, const CorrelationCache& cache);

// Diagnostic dump: one row per feature with its class correlation followed by
// its row of feature correlations.
void write_cache_csv(const CorrelationCache& cache, const std::filesystem::path& path);

}  // namespace hhfs

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hhfs/dataset.hpp"
#include "hhfs/solution.hpp"

namespace hhfs {

struct CvProtocol {
    std::size_t folds = 10;
    std::size_t repeats = 1;
    std::uint64_t base_seed = 0;

    friend bool operator==(const CvProtocol&, const CvProtocol&) = default;
};

void validate(const CvProtocol& proto);

// Label of the training row nearest to `query` (Euclidean over the selected
// features; ties go to the smallest row index). `query` is a full-width row.
int predict_1nn(const Dataset& d, std::span<const std::size_t> train_rows,
                std::span<const double> query, const FeatureMask& mask);

// Mean accuracy of leave-fold-out 1NN over `repeats` stratified k-fold
// partitions seeded base_seed, base_seed + 1, ... An empty mask scores 0.
double cv_accuracy(const Dataset& d, const FeatureMask& mask, const CvProtocol& proto);

// Thread-safe memo of accuracy by mask bits.
class FitnessCache {
public:
    std::optional<double> find(const FeatureMask& mask) const;
    void insert(const FeatureMask& mask, double accuracy);
    std::size_t size() const;

private:
    static std::string key(const FeatureMask& mask);

    mutable std::mutex mutex_;
    std::unordered_map<std::string, double> entries_;
};

// Wrapper fitness for one dataset under one protocol. Fold partitions are
// built once; results are memoized unless caching is disabled.
class Evaluator {
public:
    Evaluator(const Dataset& d, CvProtocol proto, bool use_cache = true);

    double fitness(const FeatureMask& mask);
    double cv_accuracy(const FeatureMask& mask) const;

    const CvProtocol& protocol() const { return proto_; }
    const Dataset& dataset() const { return data_; }

    // Number of full cross-validation computations performed (cache misses).
    std::uint64_t evaluations() const { return evaluations_.load(); }
    std::size_t cache_size() const { return cache_.size(); }

private:
    const Dataset& data_;
    CvProtocol proto_;
    bool use_cache_;
    std::vector<FoldAssignment> partitions_;
    FitnessCache cache_;
    mutable std::atomic<std::uint64_t> evaluations_{0};
};

}  // namespace hhfs

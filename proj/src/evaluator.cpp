#include "hhfs/evaluator.hpp"

#include <limits>
#include <stdexcept>

#include "hhfs/kernels.hpp"

namespace hhfs {

namespace {

// Selected columns of every row, packed contiguously.
struct PackedRows {
    std::size_t width = 0;
    std::vector<double> values;

    const double* row(std::size_t i) const { return values.data() + i * width; }
};

PackedRows pack(const Dataset& d, const std::vector<std::size_t>& columns) {
    PackedRows p{columns.size(), std::vector<double>(d.instance_count() * columns.size())};
    for (std::size_t i = 0; i < d.instance_count(); ++i) {
        double* out = p.values.data() + i * p.width;
        for (std::size_t c = 0; c < columns.size(); ++c) out[c] = d.value(i, columns[c]);
    }
    return p;
}

double accuracy_from_distances(const Dataset& d, const std::vector<double>& dist,
                               const FoldAssignment& folds) {
    const std::size_t n = d.instance_count();
    const auto& labels = d.labels();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = dist.data() + i * n;
        const std::size_t fold = folds.fold_of[i];
        double best = std::numeric_limits<double>::infinity();
        std::size_t nearest = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (folds.fold_of[j] == fold) continue;
            if (row[j] < best) {
                best = row[j];
                nearest = j;
            }
        }
        if (nearest < n && labels[nearest] == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

std::vector<double> pairwise_distances(const PackedRows& rows, std::size_t n) {
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = kernels::squared_distance(rows.row(i), rows.row(j), rows.width);
            dist[i * n + j] = v;
            dist[j * n + i] = v;
        }
    }
    return dist;
}

double mean_accuracy(const Dataset& d, const FeatureMask& mask,
                     const std::vector<FoldAssignment>& partitions) {
    if (mask.size() != d.feature_count())
        throw std::invalid_argument("cv_accuracy: mask/dataset dimension mismatch");
    const auto columns = mask.selected_indices();
    if (columns.empty()) return 0.0;
    const auto dist = pairwise_distances(pack(d, columns), d.instance_count());
    double sum = 0.0;
    for (const auto& folds : partitions) sum += accuracy_from_distances(d, dist, folds);
    return sum / static_cast<double>(partitions.size());
}

std::vector<FoldAssignment> make_partitions(const Dataset& d, const CvProtocol& proto) {
    validate(proto);
    std::vector<FoldAssignment> out;
    out.reserve(proto.repeats);
    for (std::size_t r = 0; r < proto.repeats; ++r)
        out.push_back(stratified_folds(d, proto.folds, proto.base_seed + r));
    return out;
}

}  // namespace

void validate(const CvProtocol& proto) {
    if (proto.folds < 2) throw std::invalid_argument("CvProtocol: folds must be >= 2");
    if (proto.repeats < 1) throw std::invalid_argument("CvProtocol: repeats must be >= 1");
}

int predict_1nn(const Dataset& d, std::span<const std::size_t> train_rows,
                std::span<const double> query, const FeatureMask& mask) {
    if (train_rows.empty()) throw std::invalid_argument("predict_1nn: empty training set");
    if (mask.size() != d.feature_count() || query.size() != d.feature_count())
        throw std::invalid_argument("predict_1nn: dimension mismatch");
    const auto columns = mask.selected_indices();
    std::vector<double> q(columns.size());
    std::vector<double> t(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) q[c] = query[columns[c]];

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_row = std::numeric_limits<std::size_t>::max();
    for (std::size_t r : train_rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) t[c] = d.value(r, columns[c]);
        const double v = kernels::squared_distance(t.data(), q.data(), columns.size());
        if (v < best || (v == best && r < best_row)) {
            best = v;
            best_row = r;
        }
    }
    return d.labels()[best_row];
}

double cv_accuracy(const Dataset& d, const FeatureMask& mask, const CvProtocol& proto) {
    return mean_accuracy(d, mask, make_partitions(d, proto));
}

std::string FitnessCache::key(const FeatureMask& mask) {
    const auto bits = mask.bits();
    return std::string(reinterpret_cast<const char*>(bits.data()), bits.size());
}

std::optional<double> FitnessCache::find(const FeatureMask& mask) const {
    const std::string k = key(mask);
    std::lock_guard lock(mutex_);
    auto it = entries_.find(k);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void FitnessCache::insert(const FeatureMask& mask, double accuracy) {
    std::string k = key(mask);
    std::lock_guard lock(mutex_);
    entries_.try_emplace(std::move(k), accuracy);
}

std::size_t FitnessCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

Evaluator::Evaluator(const Dataset& d, CvProtocol proto, bool use_cache)
    : data_(d), proto_(proto), use_cache_(use_cache), partitions_(make_partitions(d, proto)) {}

double Evaluator::cv_accuracy(const FeatureMask& mask) const {
    ++evaluations_;
    return mean_accuracy(data_, mask, partitions_);
}

double Evaluator::fitness(const FeatureMask& mask) {
    if (use_cache_) {
        if (auto hit = cache_.find(mask)) return *hit;
    }
    const double acc = cv_accuracy(mask);
    if (use_cache_) cache_.insert(mask, acc);
    return acc;
}

}  // namespace hhfs

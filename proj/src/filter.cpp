#include "hhfs/filter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "hhfs/kernels.hpp"

namespace hhfs {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least two samples");
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double a) { return a == v[0]; });
    };
    if (constant(x) || constant(y)) return 0.0;

    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double class_correlation(std::span<const double> feature, std::span<const int> labels,
                         std::size_t class_count) {
    if (feature.size() != labels.size())
        throw std::invalid_argument("class_correlation: length mismatch");
    if (class_count < 2) throw std::invalid_argument("class_correlation: need two classes");

    std::vector<double> indicator(labels.size());
    const auto against = [&](int c) {
        for (std::size_t i = 0; i < labels.size(); ++i) indicator[i] = labels[i] == c ? 1.0 : 0.0;
        return std::abs(pearson(feature, indicator));
    };
    if (class_count == 2) return against(1);

    std::vector<std::size_t> counts(class_count, 0);
    for (int y : labels) ++counts[static_cast<std::size_t>(y)];
    double total = 0.0;
    for (std::size_t c = 0; c < class_count; ++c) {
        if (counts[c] == 0) continue;
        total += static_cast<double>(counts[c]) * against(static_cast<int>(c));
    }
    return total / static_cast<double>(labels.size());
}

CorrelationCache::CorrelationCache(std::size_t n, std::vector<double> feature_feature,
                                   std::vector<double> feature_class)
    : n_(n), ff_(std::move(feature_feature)), cf_(std::move(feature_class)) {
    if (ff_.size() != n * n || cf_.size() != n)
        throw std::invalid_argument("CorrelationCache: shape mismatch");
    // Largest power of two that keeps n*n*scale below 2^62, capped at 2^44.
    int bits = 44;
    while (bits > 8 && std::ldexp(static_cast<double>(n) * static_cast<double>(n), bits) >= 0x1p62)
        --bits;
    scale_ = std::ldexp(1.0, bits);
    ff_fixed_.resize(ff_.size());
    cf_fixed_.resize(cf_.size());
    for (std::size_t i = 0; i < ff_.size(); ++i) ff_fixed_[i] = std::llround(ff_[i] * scale_);
    for (std::size_t i = 0; i < cf_.size(); ++i) cf_fixed_[i] = std::llround(cf_[i] * scale_);
}

MeritTerms CorrelationCache::terms(const FeatureMask& mask) const {
    if (mask.size() != n_) throw std::invalid_argument("cfs merit: mask/cache dimension mismatch");
    MeritTerms t;
    const std::uint8_t* bits = mask.bits().data();
    std::int64_t twice_ff = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (!bits[i]) continue;
        ++t.k;
        t.sum_cf += cf_fixed_[i];
        twice_ff += kernels::masked_sum(&ff_fixed_[i * n_], bits, n_) - ff_fixed_[i * n_ + i];
    }
    t.sum_ff = twice_ff / 2;
    return t;
}

MeritTerms CorrelationCache::flipped(const MeritTerms& current, const FeatureMask& mask,
                                     std::size_t j) const {
    const std::int64_t* row = &ff_fixed_[j * n_];
    std::int64_t with_others = kernels::masked_sum(row, mask.bits().data(), n_);
    MeritTerms t = current;
    if (mask.test(j)) {
        with_others -= row[j];
        --t.k;
        t.sum_cf -= cf_fixed_[j];
        t.sum_ff -= with_others;
    } else {
        ++t.k;
        t.sum_cf += cf_fixed_[j];
        t.sum_ff += with_others;
    }
    return t;
}

double CorrelationCache::merit(const MeritTerms& t) const {
    if (t.k == 0) return 0.0;
    const double cf = static_cast<double>(t.sum_cf) / scale_;
    const double ff = static_cast<double>(t.sum_ff) / scale_;
    return cf / std::sqrt(static_cast<double>(t.k) + 2.0 * ff);
}

CorrelationCache build_cache(const Dataset& d) {
    const std::size_t n = d.feature_count();
    std::vector<std::vector<double>> columns(n);
    std::vector<bool> constant(n);
    for (std::size_t f = 0; f < n; ++f) {
        columns[f] = d.column(f);
        const auto& c = columns[f];
        constant[f] = std::all_of(c.begin(), c.end(), [&](double v) { return v == c[0]; });
    }
    std::vector<double> ff(n * n, 0.0);
    std::vector<double> cf(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        cf[i] = class_correlation(columns[i], d.labels(), d.class_count());
        ff[i * n + i] = constant[i] ? 0.0 : 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = std::abs(pearson(columns[i], columns[j]));
            ff[i * n + j] = r;
            ff[j * n + i] = r;
        }
    }
    return CorrelationCache(n, std::move(ff), std::move(cf));
}

double cfs_merit(const FeatureMask& mask, const CorrelationCache& cache) {
    return cache.merit(cache.terms(mask));
}

void write_cache_csv(const CorrelationCache& cache, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17) << "feature,class";
    for (std::size_t j = 0; j < cache.size(); ++j) out << ",f" << j;
    out << '\n';
    for (std::size_t i = 0; i < cache.size(); ++i) {
        out << 'f' << i << ',' << cache.feature_class(i);
        for (std::size_t j = 0; j < cache.size(); ++j) out << ',' << cache.feature_feature(i, j);
        out << '\n';
    }
}

}  // namespace hhfs

#pragma once

// Cache-free reference implementations used as test oracles. They compute
// correlations straight from the data with textbook formulas in long double
// and share no code with the filter module.

#include <cmath>
#include <vector>

#include "hhfs/dataset.hpp"
#include "hhfs/solution.hpp"

namespace hhfs::testing {

inline long double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i];
    for (std::size_t i = 0; i < n; ++i) my += y[i];
    mx /= n;
    my /= n;
    long double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    cov /= (n - 1);
    vx /= (n - 1);
    vy /= (n - 1);
    if (vx == 0 || vy == 0) return 0;
    return cov / (std::sqrt(vx) * std::sqrt(vy));
}

inline long double oracle_class_correlation(const std::vector<double>& f, const std::vector<int>& y,
                                            std::size_t classes) {
    auto against = [&](int c) {
        std::vector<double> ind(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) ind[i] = y[i] == c ? 1.0 : 0.0;
        return std::fabs(oracle_pearson(f, ind));
    };
    if (classes == 2) return against(1);
    long double total = 0;
    for (std::size_t c = 0; c < classes; ++c) {
        std::size_t count = 0;
        for (int v : y) count += v == static_cast<int>(c);
        total += static_cast<long double>(count) / y.size() * against(static_cast<int>(c));
    }
    return total;
}

inline long double oracle_merit(const Dataset& d, const FeatureMask& mask) {
    const auto sel = mask.selected_indices();
    const std::size_t k = sel.size();
    if (k == 0) return 0;
    long double rcf = 0, rff = 0;
    for (std::size_t a : sel) rcf += oracle_class_correlation(d.column(a), d.labels(), d.class_count());
    rcf /= k;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            rff += std::fabs(oracle_pearson(d.column(sel[i]), d.column(sel[j])));
            ++pairs;
        }
    }
    if (pairs > 0) rff /= pairs;
    return k * rcf / std::sqrt(k + k * (k - 1.0L) * rff);
}

}  // namespace hhfs::testing

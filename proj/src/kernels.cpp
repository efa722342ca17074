#include "hhfs/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace hhfs::kernels {

namespace scalar {

double squared_distance(const double* a, const double* b, std::size_t n) {
    double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        for (std::size_t l = 0; l < kLanes; ++l) {
            const double d = a[i + l] - b[i + l];
            lane[l] += d * d;
        }
    }
    // tail behaves like a zero-padded block
    for (std::size_t l = 0; i + l < n; ++l) {
        const double d = a[i + l] - b[i + l];
        lane[l] += d * d;
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

std::int64_t masked_sum(const std::int64_t* values, const std::uint8_t* mask, std::size_t n) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i] != 0) s += values[i];
    }
    return s;
}

}  // namespace scalar

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", &scalar::squared_distance, &scalar::masked_sum};
    return table;
}

const KernelTable* avx2_table() {
#if defined(HHFS_HAVE_AVX2_TU)
    static const bool supported = __builtin_cpu_supports("avx2");
    static const KernelTable table{"avx2", &avx2::squared_distance, &avx2::masked_sum};
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* forced = std::getenv("HHFS_ISA");
        if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
        if (const KernelTable* t = avx2_table()) return *t;
        return scalar_table();
    }();
    return chosen;
}

}  // namespace hhfs::kernels

#include <immintrin.h>

#include "hhfs/kernels.hpp"

namespace hhfs::kernels::avx2 {

namespace {

inline __m256i tail_mask(std::size_t remaining) {
    alignas(32) static const std::int64_t table[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + 4 - remaining));
}

}  // namespace

double squared_distance(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    if (i < n) {
        const __m256i m = tail_mask(n - i);
        const __m256d d = _mm256_sub_pd(_mm256_maskload_pd(a + i, m), _mm256_maskload_pd(b + i, m));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    alignas(32) double lane[kLanes];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

std::int64_t masked_sum(const std::int64_t* values, const std::uint8_t* mask, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        std::int32_t packed;
        __builtin_memcpy(&packed, mask + i, sizeof(packed));
        const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256i keep = _mm256_cmpgt_epi64(wide, zero);
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
        acc = _mm256_add_epi64(acc, _mm256_and_si256(v, keep));
    }
    alignas(32) std::int64_t lane[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), acc);
    std::int64_t s = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) {
        if (mask[i] != 0) s += values[i];
    }
    return s;
}

}  // namespace hhfs::kernels::avx2

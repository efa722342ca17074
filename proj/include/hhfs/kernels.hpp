#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops used by the evaluator and the merit tracker.
//
// Every kernel has a scalar reference and (on x86-64) an AVX2 variant. The
// variants are required to produce bit-identical results: the floating-point
// kernel accumulates in four interleaved lanes and reduces them as
// (l0 + l1) + (l2 + l3) on both paths, and the integer kernel is exact.

namespace hhfs::kernels {

inline constexpr std::size_t kLanes = 4;

using SquaredDistanceFn = double (*)(const double* a, const double* b, std::size_t n);
using MaskedSumFn = std::int64_t (*)(const std::int64_t* values, const std::uint8_t* mask,
                                     std::size_t n);

struct KernelTable {
    std::string_view isa;
    SquaredDistanceFn squared_distance;
    MaskedSumFn masked_sum;
};

const KernelTable& scalar_table();

// nullptr when the AVX2 translation unit was not built or the CPU lacks AVX2.
const KernelTable* avx2_table();

// Picked once: AVX2 when available, unless HHFS_ISA=scalar is set in the
// environment.
const KernelTable& active();

inline double squared_distance(const double* a, const double* b, std::size_t n) {
    return active().squared_distance(a, b, n);
}

inline std::int64_t masked_sum(const std::int64_t* values, const std::uint8_t* mask,
                               std::size_t n) {
    return active().masked_sum(values, mask, n);
}

namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t n);
std::int64_t masked_sum(const std::int64_t* values, const std::uint8_t* mask, std::size_t n);
}  // namespace scalar

namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t n);
std::int64_t masked_sum(const std::int64_t* values, const std::uint8_t* mask, std::size_t n);
}  // namespace avx2

}  // namespace hhfs::kernels

#include "hhfs/rng.hpp"

#include <stdexcept>
#include <utility>

namespace hhfs {

std::vector<std::size_t> RandomSource::permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = index(i);
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

std::size_t SeededRng::index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("SeededRng::index: empty range");
    // Lemire's multiply-shift with rejection.
    const std::uint64_t range = n;
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t threshold = (0 - range) % range;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(engine_()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

double SeededRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t p : parts) {
        std::uint64_t z = h ^ (p + 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h = z ^ (z >> 31);
    }
    return h;
}

}  // namespace hhfs

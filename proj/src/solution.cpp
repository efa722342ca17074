#include "hhfs/solution.hpp"

#include <algorithm>
#include <stdexcept>

namespace hhfs {

FeatureMask::FeatureMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) {
        if (b > 1) throw std::invalid_argument("FeatureMask: bits must be 0 or 1");
    }
}

FeatureMask FeatureMask::from_string(std::string_view bits) {
    std::vector<std::uint8_t> v;
    v.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("FeatureMask: expected 0/1 string");
        v.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return FeatureMask(std::move(v));
}

std::size_t FeatureMask::selected_count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> FeatureMask::selected_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) out.push_back(i);
    }
    return out;
}

FeatureMask FeatureMask::flip(std::size_t i) const {
    if (i >= bits_.size()) throw std::out_of_range("FeatureMask::flip: index out of range");
    FeatureMask out = *this;
    out.toggle(i);
    return out;
}

std::string FeatureMask::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) s[i] = '1';
    }
    return s;
}

std::size_t hamming_distance(const FeatureMask& a, const FeatureMask& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: size mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a.test(i) != b.test(i);
    return d;
}

FeatureMask random_mask(std::size_t n, RandomSource& rng) {
    if (n == 0) throw std::invalid_argument("random_mask: need at least one feature");
    FeatureMask m(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.coin()) {
            m.set(i, true);
            any = true;
        }
    }
    if (!any) m.set(rng.index(n), true);
    return m;
}

}  // namespace hhfs

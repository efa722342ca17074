#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hhfs/rng.hpp"

namespace hhfs {

// Binary feature mask: bit i set means dataset column i is selected.
class FeatureMask {
public:
    FeatureMask() = default;
    explicit FeatureMask(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}
    explicit FeatureMask(std::vector<std::uint8_t> bits);

    // Parses a string of '0'/'1' characters.
    static FeatureMask from_string(std::string_view bits);

    std::size_t size() const { return bits_.size(); }
    bool test(std::size_t i) const { return bits_[i] != 0; }
    std::size_t selected_count() const;
    std::vector<std::size_t> selected_indices() const;

    // Copying edit; the receiver is unchanged.
    FeatureMask flip(std::size_t i) const;

    // In-place edits for operators that work on their own copy.
    void toggle(std::size_t i) { bits_[i] ^= 1; }
    void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }

    std::span<const std::uint8_t> bits() const { return bits_; }
    std::string to_string() const;

    friend bool operator==(const FeatureMask&, const FeatureMask&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const FeatureMask& a, const FeatureMask& b);

// Each bit set with probability 1/2; an all-zero draw gets one uniform bit set.
FeatureMask random_mask(std::size_t n, RandomSource& rng);

}  // namespace hhfs

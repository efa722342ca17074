#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hhfs {

// Source of randomness consumed by the stochastic operators. Production code
// uses SeededRng; tests substitute a scripted source to force specific draws.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    // Uniform integer in [0, n). n must be positive.
    virtual std::size_t index(std::size_t n) = 0;

    // Uniform real in [0, 1).
    virtual double uniform() = 0;

    bool bernoulli(double p) { return uniform() < p; }
    bool coin() { return bernoulli(0.5); }

    // Fisher-Yates; draws index(i + 1) for i = n-1 down to 1.
    std::vector<std::size_t> permutation(std::size_t n);
};

// mt19937_64 with hand-rolled bounded draws so streams are identical across
// standard library implementations.
class SeededRng final : public RandomSource {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::size_t index(std::size_t n) override;
    double uniform() override;

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer over a list of words; used to derive independent
// streams (run, generation, chromosome) from a master seed.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace hhfs

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hhfs/dataset.hpp"
#include "hhfs/evaluator.hpp"
#include "hhfs/filter.hpp"
#include "hhfs/llh.hpp"
#include "hhfs/rng.hpp"
#include "hhfs/solution.hpp"

namespace hhfs {

// A sequence of heuristic ids applied left to right to the incumbent.
struct Chromosome {
    std::vector<LlhId> genes;
    std::optional<double> fitness;

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct SupervisorConfig {
    std::size_t population = 30;
    std::size_t generations = 200;
    double p_crossover = 0.7;
    double p_mutation = 0.1;
    std::size_t nllh = kLlhCount;  // chromosome length
    std::size_t elitism = 1;
    double mutn_rate = 0.1;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    // Optional starting population; random when empty.
    std::vector<Chromosome> initial_population;

    friend bool operator==(const SupervisorConfig&, const SupervisorConfig&) = default;
};

void validate(const SupervisorConfig& cfg);

struct LlhCounters {
    std::array<std::uint64_t, kLlhCount> invocations{};
    // calls whose output had strictly higher merit than their input
    std::array<std::uint64_t, kLlhCount> improvements{};

    void merge(const LlhCounters& other);
    friend bool operator==(const LlhCounters&, const LlhCounters&) = default;
};

struct GenerationRecord {
    std::size_t generation = 0;
    double best_chromosome_fitness = 0.0;
    double incumbent_fitness = 0.0;
    std::size_t incumbent_m = 0;

    friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

using FitnessFn = std::function<double(const FeatureMask&)>;

// Applies the chromosome's heuristics in order to a copy of `incumbent`,
// scores the result and stores the score on the chromosome.
std::pair<FeatureMask, double> evaluate_chromosome(Chromosome& c, const FeatureMask& incumbent,
                                                   const LlhContext& ctx, const FitnessFn& fitness,
                                                   LlhCounters* counters = nullptr);

// Fitness-proportional pick; uniform when every fitness is zero.
std::size_t roulette_select(std::span<const Chromosome> population, RandomSource& rng);

// With probability p_crossover, cut uniformly in 1..len-1 and exchange tails;
// otherwise the children are copies of the parents.
std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& a, const Chromosome& b,
                                                         double p_crossover, RandomSource& rng);

// Each gene, with probability p_mutation, becomes a different id in 1..16.
Chromosome mutate_chromosome(const Chromosome& c, double p_mutation, RandomSource& rng);

Chromosome random_chromosome(std::size_t length, RandomSource& rng);

// Generational GA over heuristic sequences. Every chromosome of a generation
// is evaluated from the same incumbent; the incumbent moves only on a strict
// fitness improvement.
class Supervisor {
public:
    Supervisor(const Dataset& d, const CorrelationCache& cache, SupervisorConfig cfg,
               CvProtocol search);

    // Runs one generation; returns its history record.
    const GenerationRecord& step();
    bool done() const { return generation_ >= cfg_.generations; }

    const FeatureMask& initial() const { return initial_; }
    const FeatureMask& incumbent() const { return incumbent_; }
    double incumbent_fitness() const { return incumbent_fitness_; }
    const std::vector<Chromosome>& population() const { return population_; }
    std::size_t generation() const { return generation_; }
    const std::vector<GenerationRecord>& history() const { return history_; }
    const LlhCounters& counters() const { return counters_; }
    const Evaluator& evaluator() const { return evaluator_; }

private:
    void evaluate_population(std::vector<FeatureMask>& outcomes);
    void breed();

    const Dataset& data_;
    const CorrelationCache& cache_;
    SupervisorConfig cfg_;
    Evaluator evaluator_;
    FeatureMask initial_;
    FeatureMask incumbent_;
    double incumbent_fitness_ = 0.0;
    std::vector<Chromosome> population_;
    std::size_t generation_ = 0;
    std::vector<GenerationRecord> history_;
    LlhCounters counters_;
};

struct RunResult {
    std::uint64_t seed = 0;
    FeatureMask initial;
    FeatureMask best;
    double initial_fitness = 0.0;
    double search_fitness = 0.0;
    // cv accuracy of `best` under each reporting protocol, in order
    std::vector<double> reported;
    std::vector<GenerationRecord> history;
    LlhCounters counters;
    // distinct masks scored under the search protocol
    std::uint64_t distinct_evaluations = 0;
};

RunResult run_supervisor(const Dataset& d, const CorrelationCache& cache,
                         const SupervisorConfig& cfg, const CvProtocol& search,
                         std::span<const CvProtocol> reporting);

}  // namespace hhfs

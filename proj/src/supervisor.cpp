#include "hhfs/supervisor.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace hhfs {

void validate(const SupervisorConfig& cfg) {
    if (cfg.population < 2) throw std::invalid_argument("population must be >= 2");
    if (cfg.generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (cfg.nllh < 1) throw std::invalid_argument("chromosome length must be >= 1");
    const auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(cfg.p_crossover) || !prob(cfg.p_mutation))
        throw std::invalid_argument("GA probabilities must lie in [0,1]");
    if (!(cfg.mutn_rate > 0.0 && cfg.mutn_rate < 1.0))
        throw std::invalid_argument("mutn_rate must lie in (0,1)");
    if (cfg.elitism >= cfg.population) throw std::invalid_argument("elitism must be < population");
    if (!cfg.initial_population.empty()) {
        if (cfg.initial_population.size() != cfg.population)
            throw std::invalid_argument("initial population size differs from population");
        for (const auto& c : cfg.initial_population) {
            if (c.genes.size() != cfg.nllh)
                throw std::invalid_argument("initial chromosome length differs from nllh");
        }
    }
}

void LlhCounters::merge(const LlhCounters& other) {
    for (std::size_t i = 0; i < kLlhCount; ++i) {
        invocations[i] += other.invocations[i];
        improvements[i] += other.improvements[i];
    }
}

std::pair<FeatureMask, double> evaluate_chromosome(Chromosome& c, const FeatureMask& incumbent,
                                                   const LlhContext& ctx, const FitnessFn& fitness,
                                                   LlhCounters* counters) {
    FeatureMask current = incumbent;
    double merit = counters ? cfs_merit(current, ctx.cache) : 0.0;
    for (LlhId id : c.genes) {
        current = apply(id, current, ctx);
        if (counters) {
            const auto slot = static_cast<std::size_t>(to_int(id) - 1);
            const double next = cfs_merit(current, ctx.cache);
            ++counters->invocations[slot];
            if (next > merit) ++counters->improvements[slot];
            merit = next;
        }
    }
    const double fit = fitness(current);
    c.fitness = fit;
    return {std::move(current), fit};
}

std::size_t roulette_select(std::span<const Chromosome> population, RandomSource& rng) {
    if (population.empty()) throw std::invalid_argument("roulette_select: empty population");
    double total = 0.0;
    for (const auto& c : population) {
        if (!c.fitness) throw std::invalid_argument("roulette_select: unevaluated chromosome");
        if (*c.fitness < 0.0) throw std::invalid_argument("roulette_select: negative fitness");
        total += *c.fitness;
    }
    if (!(total > 0.0)) return rng.index(population.size());
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < population.size(); ++i) {
        const double f = *population[i].fitness;
        if (f <= 0.0) continue;
        cumulative += f;
        last_positive = i;
        if (target < cumulative) return i;
    }
    return last_positive;
}

std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& a, const Chromosome& b,
                                                         double p_crossover, RandomSource& rng) {
    if (a.genes.size() != b.genes.size())
        throw std::invalid_argument("single_point_crossover: length mismatch");
    Chromosome c1{a.genes, std::nullopt};
    Chromosome c2{b.genes, std::nullopt};
    const std::size_t len = a.genes.size();
    if (len < 2 || !rng.bernoulli(p_crossover)) return {std::move(c1), std::move(c2)};
    const std::size_t cut = 1 + rng.index(len - 1);
    for (std::size_t i = cut; i < len; ++i) {
        c1.genes[i] = b.genes[i];
        c2.genes[i] = a.genes[i];
    }
    return {std::move(c1), std::move(c2)};
}

Chromosome mutate_chromosome(const Chromosome& c, double p_mutation, RandomSource& rng) {
    Chromosome out{c.genes, std::nullopt};
    for (auto& g : out.genes) {
        if (!rng.bernoulli(p_mutation)) continue;
        int v = 1 + static_cast<int>(rng.index(kLlhCount - 1));
        if (v >= to_int(g)) ++v;
        g = static_cast<LlhId>(v);
    }
    return out;
}

Chromosome random_chromosome(std::size_t length, RandomSource& rng) {
    Chromosome c;
    c.genes.reserve(length);
    for (std::size_t i = 0; i < length; ++i)
        c.genes.push_back(static_cast<LlhId>(1 + rng.index(kLlhCount)));
    return c;
}

namespace {

enum Stream : std::uint64_t { kInit = 0, kHeuristics = 1, kBreeding = 2, kSearchFolds = 3 };

CvProtocol seeded_search_protocol(CvProtocol search, std::uint64_t seed) {
    search.base_seed = derive_seed({seed, kSearchFolds, search.base_seed});
    return search;
}

}  // namespace

Supervisor::Supervisor(const Dataset& d, const CorrelationCache& cache, SupervisorConfig cfg,
                       CvProtocol search)
    : data_(d),
      cache_(cache),
      cfg_(std::move(cfg)),
      evaluator_(d, seeded_search_protocol(search, cfg_.seed)) {
    validate(cfg_);
    if (cache.size() != d.feature_count())
        throw std::invalid_argument("Supervisor: cache does not match dataset");
    SeededRng rng(derive_seed({cfg_.seed, kInit}));
    initial_ = random_mask(d.feature_count(), rng);
    if (cfg_.initial_population.empty()) {
        for (std::size_t i = 0; i < cfg_.population; ++i)
            population_.push_back(random_chromosome(cfg_.nllh, rng));
    } else {
        population_ = cfg_.initial_population;
        for (auto& c : population_) c.fitness.reset();
    }
    incumbent_ = initial_;
    incumbent_fitness_ = evaluator_.fitness(incumbent_);
}

void Supervisor::evaluate_population(std::vector<FeatureMask>& outcomes) {
    const std::size_t n = population_.size();
    outcomes.assign(n, FeatureMask{});
    std::vector<LlhCounters> local(n);
    const FitnessFn fitness = [this](const FeatureMask& m) { return evaluator_.fitness(m); };

    const auto work = [&](std::size_t i) {
        SeededRng rng(derive_seed({cfg_.seed, kHeuristics, generation_, i}));
        LlhContext ctx{cache_, rng, cfg_.mutn_rate};
        outcomes[i] = evaluate_chromosome(population_[i], incumbent_, ctx, fitness, &local[i]).first;
    };

    const std::size_t threads = std::min(cfg_.threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) work(i);
            });
        }
    }
    for (const auto& c : local) counters_.merge(c);
}

const GenerationRecord& Supervisor::step() {
    if (done()) throw std::logic_error("Supervisor::step after the last generation");
    std::vector<FeatureMask> outcomes;
    evaluate_population(outcomes);

    std::size_t best = 0;
    for (std::size_t i = 1; i < population_.size(); ++i) {
        if (*population_[i].fitness > *population_[best].fitness) best = i;
    }
    const double best_fitness = *population_[best].fitness;
    if (best_fitness > incumbent_fitness_) {
        incumbent_ = outcomes[best];
        incumbent_fitness_ = best_fitness;
    }
    ++generation_;
    history_.push_back({generation_, best_fitness, incumbent_fitness_, incumbent_.selected_count()});
    if (!done()) breed();
    return history_.back();
}

void Supervisor::breed() {
    SeededRng rng(derive_seed({cfg_.seed, kBreeding, generation_}));
    const std::size_t n = population_.size();

    std::vector<std::size_t> ranked(n);
    std::iota(ranked.begin(), ranked.end(), std::size_t{0});
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
        return *population_[a].fitness > *population_[b].fitness;
    });

    std::vector<Chromosome> next;
    next.reserve(n);
    for (std::size_t e = 0; e < cfg_.elitism; ++e) next.push_back({population_[ranked[e]].genes, {}});

    std::vector<std::size_t> pool;
    for (std::size_t i = cfg_.elitism; i < n; ++i) pool.push_back(roulette_select(population_, rng));

    for (std::size_t i = 0; i < pool.size(); i += 2) {
        if (i + 1 == pool.size()) {
            next.push_back(mutate_chromosome(population_[pool[i]], cfg_.p_mutation, rng));
            break;
        }
        auto [c1, c2] = single_point_crossover(population_[pool[i]], population_[pool[i + 1]],
                                               cfg_.p_crossover, rng);
        next.push_back(mutate_chromosome(c1, cfg_.p_mutation, rng));
        next.push_back(mutate_chromosome(c2, cfg_.p_mutation, rng));
    }
    population_ = std::move(next);
}

RunResult run_supervisor(const Dataset& d, const CorrelationCache& cache,
                         const SupervisorConfig& cfg, const CvProtocol& search,
                         std::span<const CvProtocol> reporting) {
    Supervisor sup(d, cache, cfg, search);
    const double initial_fitness = sup.incumbent_fitness();
    while (!sup.done()) sup.step();

    RunResult r;
    r.seed = cfg.seed;
    r.initial = sup.initial();
    r.best = sup.incumbent();
    r.initial_fitness = initial_fitness;
    r.search_fitness = sup.incumbent_fitness();
    for (const auto& proto : reporting) r.reported.push_back(cv_accuracy(d, r.best, proto));
    r.history = sup.history();
    r.counters = sup.counters();
    r.distinct_evaluations = sup.evaluator().cache_size();
    return r;
}

}  // namespace hhfs

#include "hhfs/llh.hpp"

#include <stdexcept>
#include <vector>

namespace hhfs {

namespace {

bool in_domain(const FeatureMask& mask, std::size_t j, BitDomain domain) {
    switch (domain) {
        case BitDomain::All: return true;
        case BitDomain::Zeros: return !mask.test(j);
        case BitDomain::Ones: return mask.test(j);
    }
    return false;
}

// Shared body of the next-ascent family.
FeatureMask ascend_in_order(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain,
                            const std::vector<std::size_t>& order) {
    const CorrelationCache& cache = ctx.cache;
    FeatureMask work = mask;
    MeritTerms terms = cache.terms(work);
    double merit = cache.merit(terms);
    for (std::size_t j : order) {
        if (!in_domain(work, j, domain)) continue;
        const MeritTerms candidate = cache.flipped(terms, work, j);
        const double value = cache.merit(candidate);
        if (value > merit) {
            work.toggle(j);
            terms = candidate;
            merit = value;
        }
    }
    return work;
}

BitDomain domain_of(LlhId id) {
    return static_cast<BitDomain>((to_int(id) - 1) % 3);
}

constexpr std::array<LlhInfo, kLlhCount> kCatalog{{
    {LlhId::SdhcAll, "SDHC-ALL", "steepest ascent over all single-bit flips"},
    {LlhId::SdhcZeros, "SDHC-ZEROS", "steepest ascent, adding one feature"},
    {LlhId::SdhcOnes, "SDHC-ONES", "steepest ascent, removing one feature"},
    {LlhId::NahcAll, "NAHC-ALL", "next ascent, bits scanned from index 0"},
    {LlhId::NahcZeros, "NAHC-ZEROS", "next ascent over cleared bits"},
    {LlhId::NahcOnes, "NAHC-ONES", "next ascent over set bits"},
    {LlhId::DbhcAll, "DBHC-ALL", "next ascent in a random bit order"},
    {LlhId::DbhcZeros, "DBHC-ZEROS", "random-order ascent over cleared bits"},
    {LlhId::DbhcOnes, "DBHC-ONES", "random-order ascent over set bits"},
    {LlhId::RmhcAll, "RMHC-ALL", "flip one random bit, keep unless merit drops"},
    {LlhId::RmhcZeros, "RMHC-ZEROS", "random single add, keep unless merit drops"},
    {LlhId::RmhcOnes, "RMHC-ONES", "random single removal, keep unless merit drops"},
    {LlhId::Swpd, "SWPD", "swap the bits at two random positions"},
    {LlhId::Dimm, "DIMM", "pick one random bit, flip it with probability 1/2"},
    {LlhId::Hypm, "HYPM", "flip every bit with probability 1/2"},
    {LlhId::Mutn, "MUTN", "flip every bit with the mutation rate"},
}};

}  // namespace

const std::array<LlhInfo, kLlhCount>& llh_catalog() { return kCatalog; }

std::string_view llh_name(LlhId id) {
    const int v = to_int(id);
    if (v < 1 || v > static_cast<int>(kLlhCount)) return "?";
    return kCatalog[static_cast<std::size_t>(v - 1)].name;
}

std::optional<LlhId> llh_from_int(int value) {
    if (value < 1 || value > static_cast<int>(kLlhCount)) return std::nullopt;
    return static_cast<LlhId>(value);
}

FeatureMask sdhc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain) {
    const CorrelationCache& cache = ctx.cache;
    const MeritTerms terms = cache.terms(mask);
    const double merit = cache.merit(terms);
    double best = merit;
    std::size_t best_j = mask.size();
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (!in_domain(mask, j, domain)) continue;
        const double value = cache.merit(cache.flipped(terms, mask, j));
        if (best_j == mask.size() || value > best) {
            best = value;
            best_j = j;
        }
    }
    if (best_j == mask.size() || !(best > merit)) return mask;
    return mask.flip(best_j);
}

FeatureMask nahc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain) {
    std::vector<std::size_t> order(mask.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    return ascend_in_order(mask, ctx, domain, order);
}

FeatureMask dbhc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain) {
    return ascend_in_order(mask, ctx, domain, ctx.rng.permutation(mask.size()));
}

FeatureMask rmhc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain) {
    std::vector<std::size_t> eligible;
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (in_domain(mask, j, domain)) eligible.push_back(j);
    }
    if (eligible.empty()) return mask;
    const std::size_t j = eligible[ctx.rng.index(eligible.size())];
    const MeritTerms terms = ctx.cache.terms(mask);
    const double before = ctx.cache.merit(terms);
    const double after = ctx.cache.merit(ctx.cache.flipped(terms, mask, j));
    return after >= before ? mask.flip(j) : mask;
}

FeatureMask swpd(const FeatureMask& mask, const LlhContext& ctx) {
    const std::size_t n = mask.size();
    if (n < 2) throw std::invalid_argument("SWPD needs at least two features");
    const std::size_t a = ctx.rng.index(n);
    std::size_t b = ctx.rng.index(n - 1);
    if (b >= a) ++b;
    FeatureMask out = mask;
    out.set(a, mask.test(b));
    out.set(b, mask.test(a));
    return out;
}

FeatureMask dimm(const FeatureMask& mask, const LlhContext& ctx) {
    const std::size_t j = ctx.rng.index(mask.size());
    FeatureMask out = mask;
    if (ctx.rng.coin()) out.toggle(j);
    return out;
}

FeatureMask hypm(const FeatureMask& mask, const LlhContext& ctx) {
    FeatureMask out = mask;
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (ctx.rng.coin()) out.toggle(j);
    }
    return out;
}

FeatureMask mutn(const FeatureMask& mask, const LlhContext& ctx) {
    FeatureMask out = mask;
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (ctx.rng.bernoulli(ctx.mutn_rate)) out.toggle(j);
    }
    return out;
}

FeatureMask apply(LlhId id, const FeatureMask& mask, const LlhContext& ctx) {
    switch (id) {
        case LlhId::SdhcAll:
        case LlhId::SdhcZeros:
        case LlhId::SdhcOnes: return sdhc(mask, ctx, domain_of(id));
        case LlhId::NahcAll:
        case LlhId::NahcZeros:
        case LlhId::NahcOnes: return nahc(mask, ctx, domain_of(id));
        case LlhId::DbhcAll:
        case LlhId::DbhcZeros:
        case LlhId::DbhcOnes: return dbhc(mask, ctx, domain_of(id));
        case LlhId::RmhcAll:
        case LlhId::RmhcZeros:
        case LlhId::RmhcOnes: return rmhc(mask, ctx, domain_of(id));
        case LlhId::Swpd: return swpd(mask, ctx);
        case LlhId::Dimm: return dimm(mask, ctx);
        case LlhId::Hypm: return hypm(mask, ctx);
        case LlhId::Mutn: return mutn(mask, ctx);
    }
    throw std::invalid_argument("unknown low-level heuristic id " + std::to_string(to_int(id)));
}

}  // namespace hhfs

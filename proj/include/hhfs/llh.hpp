#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "hhfs/filter.hpp"
#include "hhfs/rng.hpp"
#include "hhfs/solution.hpp"

namespace hhfs {

// The sixteen low-level heuristics. Ids 1-12 are merit-guided hill climbers
// (four strategies x three bit domains), 13-16 are unconditional mutations.
enum class LlhId : std::uint8_t {
    SdhcAll = 1, SdhcZeros, SdhcOnes,
    NahcAll, NahcZeros, NahcOnes,
    DbhcAll, DbhcZeros, DbhcOnes,
    RmhcAll, RmhcZeros, RmhcOnes,
    Swpd, Dimm, Hypm, Mutn,
};

inline constexpr std::size_t kLlhCount = 16;

// Which bits a hill climber may flip: any, only cleared ones (adds features),
// or only set ones (drops features).
enum class BitDomain { All, Zeros, Ones };

struct LlhInfo {
    LlhId id;
    std::string_view name;
    std::string_view summary;
};

const std::array<LlhInfo, kLlhCount>& llh_catalog();
std::string_view llh_name(LlhId id);
std::optional<LlhId> llh_from_int(int value);
inline int to_int(LlhId id) { return static_cast<int>(id); }
inline bool is_hill_climber(LlhId id) { return to_int(id) >= 1 && to_int(id) <= 12; }

struct LlhContext {
    const CorrelationCache& cache;
    RandomSource& rng;
    double mutn_rate = 0.1;
};

// Steepest ascent over the Hamming-1 neighbourhood restricted to `domain`;
// ties go to the lowest flipped index, and the move is taken only if it
// strictly improves the merit.
FeatureMask sdhc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain);

// One pass over positions 0..N-1, keeping each flip that strictly improves.
FeatureMask nahc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain);

// As nahc, but positions are visited in a fresh random permutation.
FeatureMask dbhc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain);

// One random position from `domain`, flipped and kept if merit does not drop.
FeatureMask rmhc(const FeatureMask& mask, const LlhContext& ctx, BitDomain domain);

FeatureMask swpd(const FeatureMask& mask, const LlhContext& ctx);
FeatureMask dimm(const FeatureMask& mask, const LlhContext& ctx);
FeatureMask hypm(const FeatureMask& mask, const LlhContext& ctx);
FeatureMask mutn(const FeatureMask& mask, const LlhContext& ctx);

FeatureMask apply(LlhId id, const FeatureMask& mask, const LlhContext& ctx);

}  // namespace hhfs

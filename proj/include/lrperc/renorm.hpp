#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrperc/config.hpp"
#include "lrperc/params.hpp"
#include "lrperc/rng.hpp"

namespace lrperc {

// An open edge used to jump over a repaired defect; introduced at `level`,
// so its length is bounded by the level's jump cap.
struct PedestalBridge {
    long x = 0;
    long y = 0;
    int level = 0;
    bool operator==(const PedestalBridge&) const = default;
};

// Witness of goodness: sorted vertex list forming an oriented open path.
// Consecutive vertices at distance 1 are joined by the nearest-neighbor
// edge; larger gaps must be covered by a recorded bridge.
struct Pedestal {
    std::vector<long> vertices;
    std::vector<PedestalBridge> bridges;
    bool operator==(const Pedestal&) const = default;
};

enum class Tag { Good, Hopeful, Bad };

struct Block {
    int level = 0;
    long a = 0;
    long b = 0;
    Tag tag = Tag::Bad;
    bool final_good = false;
    std::vector<std::size_t> defects; // child indices, local to this block
    std::vector<std::size_t> children; // indices into the previous level
    Pedestal pedestal;               // set iff final_good
    bool has_defected_part = false;
    long dp_lo = 0, dp_hi = 0; // [x+1, y-1] skipped by the bridge
    bool bridged = false;
    bool forced_extremal = false;

    bool operator==(const Block&) const = default;
};

struct AdjustmentEvent {
    int level = 0;
    std::string kind; // "merge", "shift", "forced-good"
    long position = 0;
};

struct Itinerary {
    std::vector<std::vector<Block>> levels; // index k = 0..M
    std::vector<AdjustmentEvent> log;
};

std::vector<Block> classify_level0(const Configuration& config);

// One renormalization step: cut at the l_k grid, classify, run the
// adjustment loop to fixpoint, then resolve Hopeful blocks via bridging
// edges. `shuffle` (optional) randomizes which eligible block is processed
// next; the final partition must not depend on it.
std::pair<std::vector<Block>, std::vector<AdjustmentEvent>>
build_level(const Configuration& config, const std::vector<Block>& prev, int k,
            const ScaleParams& scales, Rng* shuffle = nullptr);

Itinerary run_renormalization(const Configuration& config, const ScaleParams& scales,
                              Rng* shuffle = nullptr);

// Open edge {x, y} with x in the left pedestal, y in the right pedestal,
// y - x <= cap, avoiding edges internal to the defect [def_lo, def_hi];
// smallest length first, then smallest x.
std::optional<std::pair<long, long>>
find_bridge(const Configuration& config, const Pedestal& left, const Pedestal& right,
            long def_lo, long def_hi, long cap);

// Psi_L: for each level k, the level-(k-1) blocks within
// floor(jump_cap(k)/l_{k-1}) indices of the block holding the origin are
// all final good.
bool check_origin_shielding(const Itinerary& itinerary, const ScaleParams& scales);

struct PedestalDensityReport {
    bool pass = true;
    long violations = 0;
    double min_slack = 0.0;   // min over blocks of |Y| - (|union of child Y| - l_k^{a'/a})
    double min_window_density = 1.0; // pedestal density near repaired defects
    long blocks_checked = 0;
};

PedestalDensityReport pedestal_density_check(const Itinerary& itinerary,
                                             const ScaleParams& scales);

// Re-validate a pedestal against the raw configuration: sorted vertices,
// every step open (nearest-neighbor or a recorded bridge), bridge lengths
// within each level's cap.
bool validate_pedestal(const Configuration& config, const Pedestal& pedestal,
                       const ScaleParams& scales);

} // namespace lrperc

#pragma once

#include <vector>

#include "lrperc/config.hpp"

namespace lrperc {

struct ReachSet {
    long source = 0;
    std::vector<long> members; // sorted, includes source
    bool contains(long v) const;
};

// C_x^+: vertices reachable from x by an open path with strictly increasing
// vertices. Single left-to-right pass; O(V + E).
ReachSet oriented_reachable_set(const Configuration& config, long x);

// Boolean mask over [-L, L] of vertices orientedly reachable from any source
// marked in `sources` (same indexing, v + L).
std::vector<std::uint8_t> oriented_reachable_mask(const Configuration& config,
                                                  const std::vector<std::uint8_t>& sources);

// x ~> y for some x in [-L, -L+width], y in [L-width, L].
bool has_oriented_span(const Configuration& config, long width);

// 0 ~> y for some y in [L-width, L].
bool origin_reaches_right(const Configuration& config, long width);

} // namespace lrperc

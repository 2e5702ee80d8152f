#include "lrperc/oriented.hpp"

#include <algorithm>

#include "lrperc/errors.hpp"

namespace lrperc {

bool ReachSet::contains(long v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

std::vector<std::uint8_t> oriented_reachable_mask(const Configuration& config,
                                                  const std::vector<std::uint8_t>& sources) {
    const long L = config.L;
    std::vector<std::uint8_t> reach = sources;
    // Long edges grouped by right endpoint for the sweep.
    std::vector<std::vector<long>> in_long(static_cast<std::size_t>(2 * L + 1));
    for (auto [x, y] : config.long_edges)
        in_long[static_cast<std::size_t>(y + L)].push_back(x);
    for (long y = -L + 1; y <= L; ++y) {
        const std::size_t yi = static_cast<std::size_t>(y + L);
        if (reach[yi])
            continue;
        if (config.nn(y - 1) && reach[yi - 1]) {
            reach[yi] = 1;
            continue;
        }
        for (long x : in_long[yi]) {
            if (reach[static_cast<std::size_t>(x + L)]) {
                reach[yi] = 1;
                break;
            }
        }
    }
    return reach;
}

ReachSet oriented_reachable_set(const Configuration& config, long x) {
    const long L = config.L;
    if (x < -L || x > L)
        throw DomainError("source outside [-L, L]");
    std::vector<std::uint8_t> sources(static_cast<std::size_t>(2 * L + 1), 0);
    sources[static_cast<std::size_t>(x + L)] = 1;
    auto reach = oriented_reachable_mask(config, sources);
    ReachSet rs;
    rs.source = x;
    for (long v = x; v <= L; ++v)
        if (reach[static_cast<std::size_t>(v + L)])
            rs.members.push_back(v);
    return rs;
}

bool has_oriented_span(const Configuration& config, long width) {
    const long L = config.L;
    if (!(width > 0 && width <= L))
        throw DomainError("width must lie in (0, L]");
    std::vector<std::uint8_t> sources(static_cast<std::size_t>(2 * L + 1), 0);
    for (long x = -L; x <= -L + width; ++x)
        sources[static_cast<std::size_t>(x + L)] = 1;
    auto reach = oriented_reachable_mask(config, sources);
    for (long y = L - width; y <= L; ++y)
        if (reach[static_cast<std::size_t>(y + L)])
            return true;
    return false;
}

bool origin_reaches_right(const Configuration& config, long width) {
    const long L = config.L;
    if (!(width > 0 && width <= L))
        throw DomainError("width must lie in (0, L]");
    std::vector<std::uint8_t> sources(static_cast<std::size_t>(2 * L + 1), 0);
    sources[static_cast<std::size_t>(L)] = 1; // vertex 0
    auto reach = oriented_reachable_mask(config, sources);
    for (long y = L - width; y <= L; ++y)
        if (reach[static_cast<std::size_t>(y + L)])
            return true;
    return false;
}

} // namespace lrperc

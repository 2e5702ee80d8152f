#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "lrperc/errors.hpp"
#include "lrperc/oriented.hpp"

using namespace lrperc;

namespace {

// Reference oracle: forward DFS over open edges used left to right.
void dfs(const Configuration& c, long v, std::set<long>& seen) {
    if (!seen.insert(v).second)
        return;
    if (v < c.L && c.nn(v))
        dfs(c, v + 1, seen);
    for (auto [x, y] : c.long_edges)
        if (x == v)
            dfs(c, y, seen);
}

std::set<long> dfs_reach(const Configuration& c, long source) {
    std::set<long> seen;
    dfs(c, source, seen);
    return seen;
}

} // namespace

TEST_CASE("reachability uses edges in one direction only") {
    // From 0: the edge {1,2} must not be usable to hop sideways onto 1's
    // outgoing edge {1,3}; only {0,2} is available, so C_0^+ = {0,2}.
    auto c = make_empty_configuration(3);
    c.set_nn(1, true); // edge {1,2}
    c.long_edges = {{0, 2}, {1, 3}};
    auto r0 = oriented_reachable_set(c, 0);
    CHECK(r0.members == std::vector<long>{0, 2});
    CHECK(r0.contains(2));
    CHECK_FALSE(r0.contains(3));
    auto r1 = oriented_reachable_set(c, 1);
    CHECK(r1.members == std::vector<long>{1, 2, 3});
}

TEST_CASE("matches the DFS oracle on random configurations") {
    ModelParams m;
    m.p = 0.6;
    m.beta = 1.2;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto c = sample_configuration(m, 8, 9000 + seed, SampleMode::skip);
        for (long s = -8; s <= 8; ++s) {
            auto fast = oriented_reachable_set(c, s);
            auto slow = dfs_reach(c, s);
            CHECK(std::set<long>(fast.members.begin(), fast.members.end()) == slow);
        }
    }
}

TEST_CASE("multi-source mask is the union of single-source sets") {
    ModelParams m;
    m.p = 0.5;
    m.beta = 1.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto c = sample_configuration(m, 10, 400 + seed, SampleMode::skip);
        std::vector<std::uint8_t> sources(21, 0);
        sources[0] = 1;  // -10
        sources[13] = 1; // 3
        auto mask = oriented_reachable_mask(c, sources);
        std::set<long> expect = dfs_reach(c, -10);
        auto r3 = dfs_reach(c, 3);
        expect.insert(r3.begin(), r3.end());
        for (long v = -10; v <= 10; ++v)
            CHECK((mask[static_cast<std::size_t>(v + 10)] != 0) == (expect.count(v) > 0));
    }
}

TEST_CASE("span and origin events") {
    // open nn path from -3 to 3
    auto c = make_empty_configuration(3);
    for (long i = -3; i < 3; ++i)
        c.set_nn(i, true);
    CHECK(has_oriented_span(c, 1));
    CHECK(origin_reaches_right(c, 1));

    // cut the path just right of the origin: nothing left of the cut can
    // pass vertex 0, so only a right window containing 0 gives the event
    c.set_nn(0, false);
    CHECK_FALSE(has_oriented_span(c, 1));
    CHECK_FALSE(origin_reaches_right(c, 1));
    CHECK_FALSE(has_oriented_span(c, 2));
    CHECK_FALSE(origin_reaches_right(c, 2));
    CHECK(has_oriented_span(c, 3));
    CHECK(origin_reaches_right(c, 3));

    // a long edge over the cut restores the span but not the origin event
    c.long_edges = {{-1, 1}};
    CHECK(has_oriented_span(c, 1));
    CHECK_FALSE(origin_reaches_right(c, 1));

    // left window: source at -3+width may start the path
    auto d = make_empty_configuration(3);
    for (long i = -2; i < 3; ++i)
        d.set_nn(i, true);
    CHECK(has_oriented_span(d, 1));
    CHECK(origin_reaches_right(d, 1));

    // width outside (0, L] is rejected
    CHECK_THROWS_AS(has_oriented_span(d, 0), DomainError);
    CHECK_THROWS_AS(origin_reaches_right(d, 4), DomainError);
}

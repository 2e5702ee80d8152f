#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "lrperc/config.hpp"
#include "lrperc/errors.hpp"
#include "lrperc/stats.hpp"

using namespace lrperc;

TEST_CASE("configuration basics") {
    auto c = make_empty_configuration(3);
    CHECK(c.L == 3);
    CHECK(c.nn_open.size() == 6);
    CHECK_FALSE(c.nn(-3));
    c.set_nn(-3, true);
    c.set_nn(2, true);
    CHECK(c.nn(-3));
    CHECK(c.nn(2));
    c.long_edges = {{-2, 1}, {0, 3}};
    CHECK(c.has_long_edge(-2, 1));
    CHECK(c.has_long_edge(1, -2)); // order-insensitive lookup
    CHECK_FALSE(c.has_long_edge(-2, 2));
    CHECK_NOTHROW(c.validate());

    CHECK(edge_count(1) == 3);
    CHECK(edge_count(2) == 10);
    CHECK(edge_count(10) == 21 * 20 / 2);
}

TEST_CASE("validate rejects malformed configurations") {
    auto c = make_empty_configuration(2);
    c.long_edges = {{0, 1}}; // too short for a long edge
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.long_edges = {{-3, 0}}; // out of range
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.long_edges = {{0, 2}, {-2, 0}}; // unsorted
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.long_edges = {{-2, 0}, {0, 2}};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("io round trip") {
    ModelParams m;
    m.p = 0.7;
    m.beta = 1.3;
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
        auto c = sample_configuration(m, 12, seed, SampleMode::skip);
        std::stringstream ss;
        write_configuration(ss, c);
        auto back = read_configuration(ss);
        CHECK(back == c);
    }
}

TEST_CASE("io rejects malformed input") {
    auto parse = [](const std::string& s) {
        std::istringstream is(s);
        return read_configuration(is);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("wrong-magic v1 L=2\nnn 0000\n"), ParseError);
    CHECK_THROWS_AS(parse("lrperc-config v2 L=2\nnn 0000\n"), ParseError);
    CHECK_THROWS_AS(parse("lrperc-config v1 L=x\nnn 0000\n"), ParseError);
    CHECK_THROWS_AS(parse("lrperc-config v1 L=2\nnn 000\n"), ParseError);
    CHECK_THROWS_AS(parse("lrperc-config v1 L=2\nnn 0020\n"), ParseError);
    CHECK_THROWS_AS(parse("lrperc-config v1 L=2\nnn 0000\nq 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse("lrperc-config v1 L=2\nnn 0000\ne 0 5\n"), DomainError);
    CHECK_NOTHROW(parse("lrperc-config v1 L=2\nnn 0110\ne -2 0\ne 0 2\n"));
}

TEST_CASE("enumeration sums to one and matches marginals") {
    ModelParams m;
    m.p = 0.6;
    m.beta = 1.0;
    auto all = enumerate_all_configurations(m, 2); // 10 edges
    CHECK(all.size() == 1024);
    double total = 0.0;
    double p_nn0 = 0.0;  // edge {0,1}
    double p_long = 0.0; // edge {-1,1}
    for (const auto& [c, w] : all) {
        total += w;
        if (c.nn(0))
            p_nn0 += w;
        if (c.has_long_edge(-1, 1))
            p_long += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p_nn0 == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(p_long == doctest::Approx(edge_open_probability(-1, 1, m)).epsilon(1e-12));
    CHECK_THROWS_AS(enumerate_all_configurations(m, 4), TooLarge);
}

TEST_CASE("naive and skip samplers agree in distribution") {
    ModelParams m;
    m.p = 0.8;
    m.beta = 1.5;
    const long L = 15;
    const int n = 20000;
    // per-distance open-edge counts plus nn count
    std::map<long, std::array<long, 2>> counts; // d -> {naive, skip}
    long nn_counts[2] = {0, 0};
    for (int mode = 0; mode < 2; ++mode) {
        for (int i = 0; i < n; ++i) {
            auto c = sample_configuration(m, L, 1000u + static_cast<unsigned>(i) + (mode ? 500000u : 0u),
                                          mode ? SampleMode::skip : SampleMode::naive);
            for (long v = -L; v < L; ++v)
                if (c.nn(v))
                    ++nn_counts[mode];
            for (auto [x, y] : c.long_edges)
                ++counts[y - x][static_cast<std::size_t>(mode)];
            c.validate();
        }
    }
    // nn means within 5 joint standard errors
    const double nn_mean = 2.0 * L * m.p;
    const double nn_se = std::sqrt(2.0 * L * m.p * (1 - m.p) / n);
    CHECK(std::abs(nn_counts[0] / double(n) - nn_mean) < 5 * nn_se);
    CHECK(std::abs(nn_counts[1] / double(n) - nn_mean) < 5 * nn_se);
    // per-distance counts within 5 joint SE of each other
    for (long d = 2; d <= 2 * L; ++d) {
        const long slots = 2 * L + 1 - d;
        const double q = edge_open_probability(0, d, m);
        const double se = std::sqrt(2.0 * slots * q * (1 - q) / n);
        const double diff = (counts[d][0] - counts[d][1]) / double(n);
        CHECK(std::abs(diff) < 5 * std::max(se, 1e-9) + 1e-9);
    }
}

TEST_CASE("sampling is reproducible and seed-sensitive") {
    ModelParams m;
    m.p = 0.5;
    m.beta = 2.0;
    auto a = sample_configuration(m, 20, 7, SampleMode::skip);
    auto b = sample_configuration(m, 20, 7, SampleMode::skip);
    auto c = sample_configuration(m, 20, 8, SampleMode::skip);
    CHECK(a == b);
    CHECK(a != c);
}

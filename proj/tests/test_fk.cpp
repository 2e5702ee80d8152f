#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lrperc/errors.hpp"
#include "lrperc/fk.hpp"

using namespace lrperc;

TEST_CASE("cluster counting") {
    auto c = make_empty_configuration(3);
    // singletons everywhere
    CHECK(count_clusters(c, -3, 3, Boundary::free_) == 7);
    CHECK(count_clusters(c, -1, 1, Boundary::free_) == 3);
    // under wired boundary the outside is one ghost cluster, but no vertex of
    // I touches it while all edges are closed
    CHECK(count_clusters(c, -1, 1, Boundary::wired) == 3);

    c.set_nn(-1, true); // joins -1 and 0
    c.set_nn(0, true);  // joins 0 and 1
    CHECK(count_clusters(c, -1, 1, Boundary::free_) == 1);
    c.long_edges = {{-3, 1}};
    // {-3,-1,0,1} one cluster; restricted to [-1,1] still one root
    CHECK(count_clusters(c, -1, 1, Boundary::free_) == 1);
    // wired: -3 is outside, so the cluster is the ghost cluster; still 1
    CHECK(count_clusters(c, -1, 1, Boundary::wired) == 1);

    auto d = make_empty_configuration(3);
    d.set_nn(2, true); // joins 2 and 3, both outside [-1,1]
    CHECK(count_clusters(d, -1, 1, Boundary::free_) == 3);
    CHECK(count_clusters(d, -1, 1, Boundary::wired) == 3);
    d.long_edges = {{1, 3}};
    // 1 now joins the ghost cluster; [-1,1] has {-1}, {0}, ghost
    CHECK(count_clusters(d, -1, 1, Boundary::wired) == 3);
    d.long_edges = {{-1, 3}, {1, 3}};
    // -1 and 1 share the ghost cluster
    CHECK(count_clusters(d, -1, 1, Boundary::wired) == 2);
    CHECK(count_clusters(d, -1, 1, Boundary::free_) == 2);

    CHECK_THROWS_AS(count_clusters(c, -4, 0, Boundary::free_), DomainError);
}

TEST_CASE("exact FK on a single edge") {
    ModelParams m;
    m.p = 0.5;
    m.kappa = 2.0;
    auto fk = fk_exact_tiny(m, 0, 1, Boundary::free_);
    REQUIRE(fk.edges.size() == 1);
    // p / (p + kappa(1-p)) = 1/3
    CHECK(fk.edge_marginal(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(fk.connected_probability(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("kappa = 1 reduces to the product measure") {
    ModelParams m;
    m.p = 0.7;
    m.beta = 1.4;
    m.kappa = 1.0;
    for (Boundary b : {Boundary::free_, Boundary::wired}) {
        auto fk = fk_exact_tiny(m, -1, 1, b);
        for (std::size_t e = 0; e < fk.interior_edge_count(); ++e) {
            const auto& ed = fk.edges[e];
            CHECK(fk.edge_marginal(e) ==
                  doctest::Approx(edge_open_probability(ed.x, ed.y, m)).epsilon(1e-10));
        }
    }
}

TEST_CASE("exact connectivity on three vertices") {
    ModelParams m;
    m.p = 0.6;
    m.beta = 1.0;
    m.kappa = 1.0;
    auto fk = fk_exact_tiny(m, 0, 2, Boundary::free_);
    const double p02 = edge_open_probability(0, 2, m);
    const double expect = p02 + (1.0 - p02) * m.p * m.p;
    CHECK(fk.connected_probability(0, 2) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("interior distribution is a probability vector") {
    ModelParams m;
    m.p = 0.6;
    m.beta = 1.0;
    m.kappa = 2.0;
    for (Boundary b : {Boundary::free_, Boundary::wired}) {
        auto fk = fk_exact_tiny(m, -1, 1, b);
        auto dist = fk.interior_distribution();
        CHECK(dist.size() == (1ull << fk.interior_edge_count()));
        double total = 0.0;
        for (double w : dist)
            total += w;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    // wired boundary tilts the distribution
    auto f = fk_exact_tiny(m, -1, 1, Boundary::free_).interior_distribution();
    auto w = fk_exact_tiny(m, -1, 1, Boundary::wired).interior_distribution();
    double tv = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        tv += std::abs(f[i] - w[i]);
    CHECK(tv / 2 > 1e-4);
}

TEST_CASE("ghost edge probability") {
    ModelParams m;
    m.p = 0.6;
    m.beta = 1.0;
    // independent evaluation for the left endpoint of [0, 2]
    const long W = static_cast<long>(std::ceil(m.beta * 1e6));
    double log_q = 0.0;
    for (long d = 2; d <= W; ++d)
        log_q += -m.beta / (static_cast<double>(d) * static_cast<double>(d));
    for (long y = 3; y <= W; ++y)
        log_q += -m.beta / (static_cast<double>(y) * static_cast<double>(y));
    const double expect = 1.0 - (1.0 - m.p) * std::exp(log_q);
    CHECK(ghost_open_probability(m, 0, 2, 0) == doctest::Approx(expect).epsilon(1e-9));
    // symmetric interval: endpoints match
    CHECK(ghost_open_probability(m, -2, 2, -2) ==
          doctest::Approx(ghost_open_probability(m, -2, 2, 2)).epsilon(1e-12));
    // the middle vertex has no nearest neighbor outside, so a lower value
    CHECK(ghost_open_probability(m, -2, 2, 0) < ghost_open_probability(m, -2, 2, 2));
}

TEST_CASE("heat-bath chain matches the exact marginals") {
    ModelParams m;
    m.p = 0.6;
    m.beta = 1.0;
    m.kappa = 2.0;
    auto fk = fk_exact_tiny(m, 0, 2, Boundary::free_);
    FkChain chain(m, 0, 2, Boundary::free_, 424242);
    const long burnin = 200, sweeps = 60000;
    for (long s = 0; s < burnin; ++s)
        chain.sweep();
    std::vector<long> hits(fk.edges.size(), 0);
    for (long s = 0; s < sweeps; ++s) {
        chain.sweep();
        for (std::size_t e = 0; e < fk.edges.size(); ++e)
            hits[e] += chain.open()[e] ? 1 : 0;
    }
    for (std::size_t e = 0; e < fk.edges.size(); ++e) {
        const double emp = static_cast<double>(hits[e]) / sweeps;
        CHECK(std::abs(emp - fk.edge_marginal(e)) < 0.02);
    }
}

TEST_CASE("mcmc wrapper produces valid reproducible configurations") {
    ModelParams m;
    m.p = 0.6;
    m.beta = 1.0;
    m.kappa = 2.0;
    auto a = fk_mcmc_sample(m, 4, Boundary::wired, 50, 9);
    auto b = fk_mcmc_sample(m, 4, Boundary::wired, 50, 9);
    CHECK(a == b);
    CHECK_NOTHROW(a.validate());
    CHECK_THROWS_AS(fk_mcmc_sample(m, 4, Boundary::wired, 0, 9), DomainError);
}

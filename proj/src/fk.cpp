#include "lrperc/fk.hpp"

#include <algorithm>
#include <cmath>

#include "lrperc/errors.hpp"
#include "lrperc/union_find.hpp"

namespace lrperc {

long count_clusters(const Configuration& config, long a, long b, Boundary boundary) {
    const long L = config.L;
    if (a < -L || b > L || a > b)
        throw DomainError("count_clusters: interval out of range");
    const std::size_t n = static_cast<std::size_t>(2 * L + 1);
    const std::size_t ghost = n;
    UnionFind uf(n + 1);
    auto id = [L](long v) { return static_cast<std::size_t>(v + L); };
    if (boundary == Boundary::wired) {
        for (long v = -L; v <= L; ++v)
            if (v < a || v > b)
                uf.unite(id(v), ghost);
    }
    for (long i = -L; i < L; ++i)
        if (config.nn(i))
            uf.unite(id(i), id(i + 1));
    for (auto [x, y] : config.long_edges)
        uf.unite(id(x), id(y));
    std::vector<std::size_t> roots;
    for (long v = a; v <= b; ++v)
        roots.push_back(uf.find(id(v)));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<long>(roots.size());
}

double ghost_open_probability(const ModelParams& model, long a, long b, long x) {
    const long W = static_cast<long>(std::ceil(model.beta * 1e6));
    double log_q = 0.0;
    double q_nn = 1.0;
    for (long y = x - W; y <= x + W; ++y) {
        if (y >= a && y <= b)
            continue;
        const long d = std::labs(y - x);
        if (d == 0)
            continue;
        if (d == 1)
            q_nn *= 1.0 - model.p;
        else
            log_q += -model.beta / (static_cast<double>(d) * static_cast<double>(d));
    }
    return 1.0 - q_nn * std::exp(log_q);
}

namespace {

std::vector<FkEdge> build_edges(const ModelParams& model, long a, long b,
                                Boundary boundary, std::size_t* interior_count) {
    std::vector<FkEdge> edges;
    for (long x = a; x < b; ++x)
        for (long y = x + 1; y <= b; ++y)
            edges.push_back({x, y, edge_open_probability(x, y, model), false});
    *interior_count = edges.size();
    if (boundary == Boundary::wired)
        for (long x = a; x <= b; ++x)
            edges.push_back({x, 0, ghost_open_probability(model, a, b, x), true});
    return edges;
}

// Cluster count C_[a,b] for one edge-state mask on the interval graph.
long mask_clusters(long a, long b, const std::vector<FkEdge>& edges,
                   std::uint64_t mask) {
    const std::size_t n = static_cast<std::size_t>(b - a + 1);
    const std::size_t ghost = n;
    UnionFind uf(n + 1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!((mask >> e) & 1ull))
            continue;
        const std::size_t u = static_cast<std::size_t>(edges[e].x - a);
        const std::size_t v =
            edges[e].to_ghost ? ghost : static_cast<std::size_t>(edges[e].y - a);
        uf.unite(u, v);
    }
    std::vector<std::size_t> roots;
    for (std::size_t v = 0; v < n; ++v)
        roots.push_back(uf.find(v));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return static_cast<long>(roots.size());
}

} // namespace

FkExact fk_exact_tiny(const ModelParams& model, long a, long b, Boundary boundary) {
    FkExact out;
    out.a = a;
    out.b = b;
    out.kappa = model.kappa;
    std::size_t interior = 0;
    out.edges = build_edges(model, a, b, boundary, &interior);
    if (out.edges.size() > 24)
        throw TooLarge("exact FK enumeration limited to 24 edges");
    const std::uint64_t nstates = 1ull << out.edges.size();
    out.probs.assign(nstates, 0.0);
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < nstates; ++mask) {
        double w = std::pow(model.kappa, static_cast<double>(mask_clusters(a, b, out.edges, mask)));
        for (std::size_t e = 0; e < out.edges.size(); ++e)
            w *= ((mask >> e) & 1ull) ? out.edges[e].p : 1.0 - out.edges[e].p;
        out.probs[mask] = w;
        total += w;
    }
    for (double& w : out.probs)
        w /= total;
    return out;
}

std::size_t FkExact::interior_edge_count() const {
    std::size_t n = 0;
    while (n < edges.size() && !edges[n].to_ghost)
        ++n;
    return n;
}

double FkExact::edge_marginal(std::size_t e) const {
    double m = 0.0;
    for (std::uint64_t mask = 0; mask < probs.size(); ++mask)
        if ((mask >> e) & 1ull)
            m += probs[mask];
    return m;
}

double FkExact::connected_probability(long x, long y) const {
    double m = 0.0;
    const std::size_t n = static_cast<std::size_t>(b - a + 1);
    for (std::uint64_t mask = 0; mask < probs.size(); ++mask) {
        UnionFind uf(n + 1);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!((mask >> e) & 1ull))
                continue;
            const std::size_t u = static_cast<std::size_t>(edges[e].x - a);
            const std::size_t v = edges[e].to_ghost ? n : static_cast<std::size_t>(edges[e].y - a);
            uf.unite(u, v);
        }
        if (uf.connected(static_cast<std::size_t>(x - a), static_cast<std::size_t>(y - a)))
            m += probs[mask];
    }
    return m;
}

std::vector<double> FkExact::interior_distribution() const {
    const std::size_t ni = interior_edge_count();
    std::vector<double> dist(1ull << ni, 0.0);
    const std::uint64_t lo_mask = (1ull << ni) - 1ull;
    for (std::uint64_t mask = 0; mask < probs.size(); ++mask)
        dist[mask & lo_mask] += probs[mask];
    return dist;
}

FkChain::FkChain(const ModelParams& model, long a, long b, Boundary boundary,
                 std::uint64_t seed)
    : model_(model), a_(a), b_(b), rng_(seed) {
    edges_ = build_edges(model, a, b, boundary, &interior_count_);
    open_.assign(edges_.size(), 0);
}

bool FkChain::connected_without(std::size_t skip, long x, long y, bool y_is_ghost) {
    const std::size_t n = static_cast<std::size_t>(b_ - a_ + 1);
    const std::size_t ghost = n;
    UnionFind uf(n + 1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (e == skip || !open_[e])
            continue;
        const std::size_t u = static_cast<std::size_t>(edges_[e].x - a_);
        const std::size_t v =
            edges_[e].to_ghost ? ghost : static_cast<std::size_t>(edges_[e].y - a_);
        uf.unite(u, v);
    }
    const std::size_t u = static_cast<std::size_t>(x - a_);
    const std::size_t v = y_is_ghost ? ghost : static_cast<std::size_t>(y - a_);
    return uf.connected(u, v);
}

void FkChain::sweep() {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const double pe = edges_[e].p;
        double cond;
        if (model_.kappa == 1.0) {
            cond = pe;
        } else if (connected_without(e, edges_[e].x, edges_[e].y, edges_[e].to_ghost)) {
            cond = pe;
        } else {
            cond = pe / (pe + model_.kappa * (1.0 - pe));
        }
        open_[e] = rng_.bernoulli(cond) ? 1 : 0;
    }
}

std::uint64_t FkChain::interior_mask() const {
    std::uint64_t m = 0;
    for (std::size_t e = 0; e < interior_count_; ++e)
        if (open_[e])
            m |= 1ull << e;
    return m;
}

Configuration fk_mcmc_sample(const ModelParams& model, long L, Boundary boundary,
                             long sweeps, std::uint64_t seed) {
    if (sweeps < 1)
        throw DomainError("sweeps >= 1 required");
    FkChain chain(model, -L, L, boundary, seed);
    for (long s = 0; s < sweeps; ++s)
        chain.sweep();
    Configuration c = make_empty_configuration(L);
    for (std::size_t e = 0; e < chain.interior_edge_count(); ++e) {
        if (!chain.open()[e])
            continue;
        const auto& ed = chain.edges()[e];
        if (ed.y - ed.x == 1)
            c.set_nn(ed.x, true);
        else
            c.long_edges.emplace_back(ed.x, ed.y);
    }
    std::sort(c.long_edges.begin(), c.long_edges.end());
    return c;
}

} // namespace lrperc

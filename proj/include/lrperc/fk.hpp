#pragma once

#include <cstdint>
#include <vector>

#include "lrperc/config.hpp"
#include "lrperc/params.hpp"
#include "lrperc/rng.hpp"

namespace lrperc {

enum class Boundary { free_, wired };

// C_I(omega): number of open components intersecting I = [a, b]. Under the
// wired condition everything outside I is contracted to a single ghost
// cluster; the ghost component is counted once if it reaches into I.
long count_clusters(const Configuration& config, long a, long b, Boundary boundary);

struct FkEdge {
    long x = 0;
    long y = 0; // ignored when to_ghost
    double p = 0.0;
    bool to_ghost = false;
};

// Exact FK distribution on the interval [a, b] by enumeration of all edge
// states (interior pairs plus, when wired, one ghost edge per vertex).
struct FkExact {
    long a = 0;
    long b = 0;
    double kappa = 1.0;
    std::vector<FkEdge> edges;
    std::vector<double> probs; // indexed by open-edge bitmask

    double edge_marginal(std::size_t e) const;
    double connected_probability(long x, long y) const;
    // Distribution over interior-edge states only (ghost edges marginalized).
    std::vector<double> interior_distribution() const;
    std::size_t interior_edge_count() const;
};

FkExact fk_exact_tiny(const ModelParams& model, long a, long b, Boundary boundary);

// Single-edge heat-bath chain targeting the FK measure on [a, b]. Edges are
// visited in fixed sorted order; the conditional open probability is p_e when
// the endpoints are already connected in omega minus e, else
// p_e / (p_e + kappa (1 - p_e)).
class FkChain {
  public:
    FkChain(const ModelParams& model, long a, long b, Boundary boundary,
            std::uint64_t seed);

    void sweep();
    const std::vector<FkEdge>& edges() const { return edges_; }
    const std::vector<std::uint8_t>& open() const { return open_; }
    std::size_t interior_edge_count() const { return interior_count_; }
    // Bitmask over interior edges, in edge-list order.
    std::uint64_t interior_mask() const;

  private:
    bool connected_without(std::size_t skip, long x, long y, bool y_is_ghost);

    ModelParams model_;
    long a_, b_;
    std::vector<FkEdge> edges_;
    std::size_t interior_count_ = 0;
    std::vector<std::uint8_t> open_;
    Rng rng_;
};

// Convenience wrapper on [-L, L] returning the interior configuration.
Configuration fk_mcmc_sample(const ModelParams& model, long L, Boundary boundary,
                             long sweeps, std::uint64_t seed);

// Wired ghost-edge open probability for vertex x of [a, b]: one minus the
// closed product over y outside [a, b] with |y - x| <= W, the truncation W
// chosen so the neglected tail beta/W is below 1e-6.
double ghost_open_probability(const ModelParams& model, long a, long b, long x);

} // namespace lrperc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrperc/errors.hpp"

namespace lrperc {

// Edge law: p on nearest-neighbor edges, 1 - exp(-beta/|x-y|^2) beyond.
struct ModelParams {
    double beta = 2.0;
    double p = 0.99;
    double kappa = 1.0;

    // Enforces the model's domain. Samplers accept p = 1 (degenerate test
    // mode), so validation is done at API/CLI boundaries, not construction.
    void validate() const;
};

double edge_open_probability(long x, long y, const ModelParams& params);

// l_0 = 1, l_1 given, l_k = floor(l_{k-1}^{alpha-1}) * l_{k-1}.
std::vector<long> scale_sequence(long l1, double alpha, int M);

struct ScaleParams {
    double alpha = 1.5;
    double alpha_prime = 1.4;
    double delta = 2.1;
    double eta = 0.05;
    long l1 = 10;
    int M = 1;
    std::vector<long> scales; // l_0 .. l_M

    static ScaleParams make(long l1, double alpha, double alpha_prime,
                            double delta, double eta, int M);

    long L() const { return scales.back(); }

    // floor(l_k^{alpha'/alpha}): the per-level cap on bridging-edge length.
    // Computed in long double with a +-1 exactness guard so block boundary
    // arithmetic never depends on rounding of pow().
    long jump_cap(int k) const;

    void validate() const;
};

struct FeasibilityLine {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

struct FeasibilityReport {
    bool feasible = false;
    std::vector<FeasibilityLine> lines;
};

// The inequality chain fixing (alpha, alpha', delta) for given beta, eta.
FeasibilityReport check_feasibility(double beta, double alpha,
                                    double alpha_prime, double delta,
                                    double eta);

// 1 - kappa^{-2} (ln 2)^5 / 128 * l1^{-delta-1}
double p_threshold(double kappa, long l1, double delta);

struct LowerBoundReport {
    double value = 0.0;
    double log_value = 0.0; // compensated log-sum, exact to underflow
    bool nonpositive_factor = false;
};

// p^{floor(l1^{a'/a})} * prod_{k=2}^{M} (1 - l_{k-1}^{-delta})^{floor(floor(l_k^{a'/a})/l_{k-1})}
LowerBoundReport percolation_lower_bound(double p, const ScaleParams& scales);

long floor_power(long base, double exponent);

} // namespace lrperc

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lrperc/config.hpp"
#include "lrperc/params.hpp"

namespace lrperc {

struct ExperimentReport {
    std::string name;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    ModelParams model;
    ScaleParams scales;
    std::optional<double> reference_bound;
    std::string bound_formula;
    bool approximate = false; // kappa > 1 runs via MCMC, no mixing guarantee
    // origin experiment extras
    std::uint64_t shielding_trials = 0;
    std::uint64_t shielding_successes = 0;
};

// Fraction of interior level-k blocks that end up defected (final B) under
// the product measure; reference value l_k^{-delta}.
ExperimentReport estimate_defect_probability(const ModelParams& model,
                                             const ScaleParams& scales, int k,
                                             std::uint64_t trials, std::uint64_t seed,
                                             int threads = 1);

// Conditional frequency of a successful bridging edge among Hopeful level-k
// blocks with an interior defect.
ExperimentReport estimate_repair_probability(const ModelParams& model,
                                             const ScaleParams& scales, int k,
                                             std::uint64_t trials, std::uint64_t seed,
                                             int threads = 1);

ExperimentReport estimate_span_probability(const ModelParams& model,
                                           const ScaleParams& scales,
                                           std::uint64_t trials, std::uint64_t seed,
                                           int threads = 1);

ExperimentReport estimate_origin_percolation(const ModelParams& model,
                                             const ScaleParams& scales,
                                             std::uint64_t trials, std::uint64_t seed,
                                             int threads = 1);

// Single level-1 block with a pinned defect: the bridging probability has the
// closed form 1 - prod over admissible pairs of exp(-beta/(y-x)^2), and the
// Monte Carlo side exercises the real bridge search on sampled long edges.
struct ConditionedRepairResult {
    double exact = 0.0;
    ExperimentReport mc;
};

ConditionedRepairResult repair_oracle_level1(const ModelParams& model,
                                             const ScaleParams& scales, long block_lo,
                                             long block_hi, long defect_left,
                                             std::uint64_t trials, std::uint64_t seed);

} // namespace lrperc

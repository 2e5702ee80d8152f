#include "lrperc/experiments.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "lrperc/errors.hpp"
#include "lrperc/fk.hpp"
#include "lrperc/oriented.hpp"
#include "lrperc/renorm.hpp"
#include "lrperc/rng.hpp"
#include "lrperc/stats.hpp"

namespace lrperc {

namespace {

struct Counters {
    std::uint64_t num = 0;
    std::uint64_t den = 0;
    std::uint64_t s_num = 0;
    std::uint64_t s_den = 0;
    std::uint64_t violations = 0;
    void add(const Counters& o) {
        num += o.num;
        den += o.den;
        s_num += o.s_num;
        s_den += o.s_den;
        violations += o.violations;
    }
};

// Runs trials in contiguous chunks; per-trial seeds depend only on the
// master seed and the trial index, and aggregation is integer addition, so
// results do not depend on the thread count.
template <typename F>
Counters run_trials(std::uint64_t trials, std::uint64_t seed, int threads, F per_trial) {
    if (threads < 1)
        threads = 1;
    std::vector<Counters> partial(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + static_cast<std::uint64_t>(threads) - 1) /
                                static_cast<std::uint64_t>(threads);
    for (int t = 0; t < threads; ++t) {
        const std::uint64_t lo = static_cast<std::uint64_t>(t) * chunk;
        const std::uint64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([&, t, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) {
                Rng rng(derive_seed(seed, i));
                per_trial(i, rng, partial[static_cast<std::size_t>(t)]);
            }
        });
    }
    for (auto& th : pool)
        th.join();
    Counters total;
    for (const auto& c : partial)
        total.add(c);
    return total;
}

ExperimentReport base_report(std::string name, const ModelParams& model,
                             const ScaleParams& scales, std::uint64_t trials,
                             std::uint64_t seed) {
    ExperimentReport rep;
    rep.name = std::move(name);
    rep.model = model;
    rep.scales = scales;
    rep.trials = trials;
    rep.master_seed = seed;
    return rep;
}

void fill_interval(ExperimentReport& rep, std::uint64_t num, std::uint64_t den) {
    rep.successes = num;
    rep.trials = den;
    const auto w = wilson_interval(num, den);
    rep.estimate = w.estimate;
    rep.ci_low = w.low;
    rep.ci_high = w.high;
}

} // namespace

ExperimentReport estimate_defect_probability(const ModelParams& model,
                                             const ScaleParams& scales, int k,
                                             std::uint64_t trials, std::uint64_t seed,
                                             int threads) {
    if (k < 1 || k > scales.M)
        throw DomainError("level out of range");
    auto rep = base_report("defect", model, scales, trials, seed);
    rep.reference_bound = std::pow(static_cast<double>(scales.scales[static_cast<std::size_t>(k)]),
                               -scales.delta);
    rep.bound_formula = "l_k^-delta";
    const long L = scales.L();
    auto tally = [&](const Configuration& config, Counters& c) {
        Itinerary it;
        it.levels.push_back(classify_level0(config));
        for (int lev = 1; lev <= k; ++lev)
            it.levels.push_back(build_level(config, it.levels.back(), lev, scales).first);
        const auto& blocks = it.levels.back();
        for (std::size_t j = 1; j + 1 < blocks.size(); ++j) {
            ++c.den;
            if (!blocks[j].final_good)
                ++c.num;
        }
    };
    Counters total;
    if (model.kappa == 1.0) {
        total = run_trials(trials, seed, threads, [&](std::uint64_t, Rng& rng, Counters& c) {
            auto config = sample_configuration(model, L, rng.next(), SampleMode::skip);
            tally(config, c);
        });
    } else {
        rep.approximate = true;
        const long burnin = 1000;
        const long thin = 10;
        FkChain chain(model, -L, L, Boundary::free_, derive_seed(seed, 0));
        for (long s = 0; s < burnin; ++s)
            chain.sweep();
        for (std::uint64_t i = 0; i < trials; ++i) {
            for (long s = 0; s < thin; ++s)
                chain.sweep();
            Configuration config = make_empty_configuration(L);
            for (std::size_t e = 0; e < chain.interior_edge_count(); ++e) {
                if (!chain.open()[e])
                    continue;
                const auto& ed = chain.edges()[e];
                if (ed.y - ed.x == 1)
                    config.set_nn(ed.x, true);
                else
                    config.long_edges.emplace_back(ed.x, ed.y);
            }
            tally(config, total);
        }
    }
    if (total.den == 0)
        throw NoConditioningEvents("no interior blocks at this level");
    fill_interval(rep, total.num, total.den);
    return rep;
}

ExperimentReport estimate_repair_probability(const ModelParams& model,
                                             const ScaleParams& scales, int k,
                                             std::uint64_t trials, std::uint64_t seed,
                                             int threads) {
    if (k < 1 || k > scales.M)
        throw DomainError("level out of range");
    auto rep = base_report("repair", model, scales, trials, seed);
    const double expo = model.beta * (1.0 - scales.eta) * (scales.alpha_prime - 1.0);
    if (k >= 2)
        rep.reference_bound =
            1.0 - std::pow(static_cast<double>(scales.scales[static_cast<std::size_t>(k) - 1]), -expo);
    else
        rep.reference_bound =
            1.0 - std::pow(static_cast<double>(scales.l1), -expo / scales.alpha);
    rep.bound_formula = "1 - l_{k-1}^{-beta(1-eta)(alpha'-1)} (k=1: exponent / alpha)";
    const long L = scales.L();
    Counters total = run_trials(trials, seed, threads, [&](std::uint64_t, Rng& rng, Counters& c) {
        auto config = sample_configuration(model, L, rng.next(), SampleMode::skip);
        Itinerary it;
        it.levels.push_back(classify_level0(config));
        for (int lev = 1; lev <= k; ++lev)
            it.levels.push_back(build_level(config, it.levels.back(), lev, scales).first);
        for (const auto& blk : it.levels.back()) {
            if (blk.tag != Tag::Hopeful || blk.forced_extremal)
                continue;
            const std::size_t d = blk.defects.at(0);
            if (d == 0 || d + 1 == blk.children.size())
                continue; // defect at the rim: no two-sided bridge attempt
            ++c.den;
            if (blk.bridged)
                ++c.num;
        }
    });
    if (total.den == 0)
        throw NoConditioningEvents("no Hopeful blocks with interior defect occurred");
    fill_interval(rep, total.num, total.den);
    return rep;
}

ExperimentReport estimate_span_probability(const ModelParams& model,
                                           const ScaleParams& scales,
                                           std::uint64_t trials, std::uint64_t seed,
                                           int threads) {
    auto rep = base_report("span", model, scales, trials, seed);
    rep.reference_bound =
        1.0 - 2.0 * std::pow(static_cast<double>(scales.L()), -scales.delta);
    rep.bound_formula = "1 - 2 L^-delta";
    const long L = scales.L();
    const long width = scales.jump_cap(scales.M);
    Counters total = run_trials(trials, seed, threads, [&](std::uint64_t, Rng& rng, Counters& c) {
        auto config = sample_configuration(model, L, rng.next(), SampleMode::skip);
        ++c.den;
        if (has_oriented_span(config, width))
            ++c.num;
    });
    fill_interval(rep, total.num, total.den);
    return rep;
}

ExperimentReport estimate_origin_percolation(const ModelParams& model,
                                             const ScaleParams& scales,
                                             std::uint64_t trials, std::uint64_t seed,
                                             int threads) {
    auto rep = base_report("origin", model, scales, trials, seed);
    const auto lb = percolation_lower_bound(model.p, scales);
    rep.reference_bound = lb.value;
    rep.bound_formula = "p^J1 * prod (1 - l_{k-1}^-delta)^(Jk/l_{k-1})";
    const long L = scales.L();
    const long width = scales.jump_cap(scales.M);
    Counters total = run_trials(trials, seed, threads, [&](std::uint64_t, Rng& rng, Counters& c) {
        auto config = sample_configuration(model, L, rng.next(), SampleMode::skip);
        const bool reaches = origin_reaches_right(config, width);
        ++c.den;
        if (reaches)
            ++c.num;
        Itinerary it = run_renormalization(config, scales);
        const auto& top = it.levels.back();
        bool all_good = true;
        for (const auto& blk : top)
            all_good = all_good && blk.final_good;
        if (all_good && !has_oriented_span(config, width))
            ++c.violations;
        if (all_good && check_origin_shielding(it, scales)) {
            ++c.s_den;
            if (reaches)
                ++c.s_num;
        }
    });
    if (total.violations > 0)
        throw DomainError("soundness violation: good top blocks without a span");
    fill_interval(rep, total.num, total.den);
    rep.shielding_trials = total.s_den;
    rep.shielding_successes = total.s_num;
    return rep;
}

ConditionedRepairResult repair_oracle_level1(const ModelParams& model,
                                             const ScaleParams& scales, long block_lo,
                                             long block_hi, long defect_left,
                                             std::uint64_t trials, std::uint64_t seed) {
    if (!(block_lo <= defect_left && defect_left + 1 <= block_hi))
        throw DomainError("defect must lie inside the block");
    if (defect_left == block_lo || defect_left + 1 == block_hi)
        throw DomainError("defect must be interior to the block");
    const long J = scales.jump_cap(1);
    const long L = std::max(std::labs(block_lo), std::labs(block_hi));

    // Admissible bridging pairs: left vertex up to the defect, right vertex
    // from just past it, length in [2, J].
    std::vector<std::pair<long, long>> pairs;
    double closed_log = 0.0;
    for (long x = block_lo; x <= defect_left; ++x)
        for (long y = defect_left + 1; y <= block_hi; ++y) {
            const long len = y - x;
            if (len < 2 || len > J)
                continue;
            pairs.emplace_back(x, y);
            closed_log += -model.beta / (static_cast<double>(len) * static_cast<double>(len));
        }
    ConditionedRepairResult res;
    res.exact = 1.0 - std::exp(closed_log);

    Pedestal left, right;
    for (long v = block_lo; v <= defect_left; ++v)
        left.vertices.push_back(v);
    for (long v = defect_left + 1; v <= block_hi; ++v)
        right.vertices.push_back(v);

    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, i));
        Configuration config = make_empty_configuration(L);
        for (long v = block_lo; v < block_hi; ++v)
            config.set_nn(v, v != defect_left);
        for (auto [x, y] : pairs) {
            const long len = y - x;
            const double popen =
                -std::expm1(-model.beta / (static_cast<double>(len) * static_cast<double>(len)));
            if (rng.bernoulli(popen))
                config.long_edges.emplace_back(x, y);
        }
        if (find_bridge(config, left, right, defect_left, defect_left + 1, J))
            ++hits;
    }
    res.mc = base_report("repair-oracle", model, scales, trials, seed);
    fill_interval(res.mc, hits, trials);
    res.mc.reference_bound = res.exact;
    res.mc.bound_formula = "1 - prod exp(-beta/(y-x)^2)";
    return res;
}

} // namespace lrperc

#include "lrperc/renorm.hpp"

#include <algorithm>
#include <cmath>

#include "lrperc/errors.hpp"

namespace lrperc {

namespace {

// Append `next` to `acc`, fusing the shared boundary vertex.
void concat_pedestal(Pedestal& acc, const Pedestal& next) {
    for (long v : next.vertices) {
        if (!acc.vertices.empty() && v <= acc.vertices.back())
            continue;
        acc.vertices.push_back(v);
    }
    acc.bridges.insert(acc.bridges.end(), next.bridges.begin(), next.bridges.end());
}

struct Range {
    std::size_t cb = 0, ce = 0; // child index range into prev
};

struct RangeView {
    const std::vector<Block>* prev;
    long a(const Range& r) const { return (*prev)[r.cb].a; }
    long b(const Range& r) const { return (*prev)[r.ce - 1].b; }
    std::vector<std::size_t> bad_children(const Range& r) const {
        std::vector<std::size_t> out;
        for (std::size_t j = r.cb; j < r.ce; ++j)
            if (!(*prev)[j].final_good)
                out.push_back(j);
        return out;
    }
};

} // namespace

std::vector<Block> classify_level0(const Configuration& config) {
    const long L = config.L;
    std::vector<Block> blocks;
    blocks.reserve(static_cast<std::size_t>(2 * L));
    for (long i = -L; i < L; ++i) {
        Block blk;
        blk.level = 0;
        blk.a = i;
        blk.b = i + 1;
        const bool open = config.nn(i);
        blk.tag = open ? Tag::Good : Tag::Bad;
        blk.final_good = open;
        if (open)
            blk.pedestal.vertices = {i, i + 1};
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

std::optional<std::pair<long, long>>
find_bridge(const Configuration& config, const Pedestal& left, const Pedestal& right,
            long def_lo, long def_hi, long cap) {
    std::optional<std::pair<long, long>> best;
    long best_len = cap + 1;
    for (long x : left.vertices) {
        for (long y : right.vertices) {
            if (y <= x)
                continue;
            const long len = y - x;
            if (len > cap)
                break; // right.vertices sorted ascending
            if (x >= def_lo && y <= def_hi)
                continue; // internal to the defected block
            const bool open = (len == 1) ? config.nn(x) : config.has_long_edge(x, y);
            if (!open)
                continue;
            if (len < best_len || (len == best_len && x < best->first)) {
                best = {x, y};
                best_len = len;
            }
        }
    }
    return best;
}

std::pair<std::vector<Block>, std::vector<AdjustmentEvent>>
build_level(const Configuration& config, const std::vector<Block>& prev, int k,
            const ScaleParams& scales, Rng* shuffle) {
    if (k < 1 || k > scales.M)
        throw DomainError("build_level: level out of range");
    if (prev.empty())
        throw InvalidTiling("previous level is empty");
    const long L = config.L;
    if (prev.front().a != -L || prev.back().b != L)
        throw InvalidTiling("previous level does not tile [-L, L]");
    for (std::size_t j = 1; j < prev.size(); ++j)
        if (prev[j].a != prev[j - 1].b)
            throw InvalidTiling("previous blocks do not share endpoints");

    const long lk = scales.scales[static_cast<std::size_t>(k)];
    const long J = scales.jump_cap(k);
    const long W = (k == 1) ? 2 * J : 3 * J;
    std::vector<AdjustmentEvent> log;

    // Cut at the grid x_i = i*l_k, snapped to the first previous-level block
    // whose right endpoint reaches the grid point.
    std::vector<std::size_t> splits;
    for (long z = -L + lk; z <= L - lk; z += lk) {
        std::size_t t = 0;
        while (t < prev.size() && prev[t].b < z)
            ++t;
        if (t + 1 < prev.size())
            splits.push_back(t + 1);
    }
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

    std::vector<std::size_t> cuts;
    cuts.push_back(0);
    cuts.insert(cuts.end(), splits.begin(), splits.end());
    cuts.push_back(prev.size());

    // Adjustment: synchronous rounds. Every round computes, from the
    // round-start partition alone, one action per interior cut (dissolve =
    // merge the two blocks, or move the cut away from a boundary-hugging
    // defect). The per-cut decisions commute, so the outcome is independent
    // of the order in which eligible cuts are examined; `shuffle` only
    // permutes that examination order.
    enum class Act { none, dissolve, shift };
    const std::size_t iter_cap = 1000 + 10 * cuts.size();
    std::size_t iter = 0;
    while (true) {
        if (++iter > iter_cap)
            throw DomainError("adjustment loop failed to reach a fixpoint");
        const std::size_t m = cuts.size();
        std::vector<std::vector<std::size_t>> bad(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = cuts[i]; j < cuts[i + 1]; ++j)
                if (!prev[j].final_good)
                    bad[i].push_back(j);

        std::vector<Act> act(m, Act::none);
        std::vector<std::size_t> newval(m, 0);
        std::vector<std::size_t> order;
        for (std::size_t ci = 1; ci + 1 < m; ++ci)
            order.push_back(ci);
        if (shuffle) {
            for (std::size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[static_cast<std::size_t>(shuffle->below(i))]);
        }
        for (std::size_t ci : order) {
            const std::size_t c = cuts[ci];
            const std::size_t A = ci - 1, B = ci;
            const long shared = prev[c].a;
            const bool aR = bad[A].size() == 1 && shared - prev[bad[A][0]].b < J;
            const bool bL = bad[B].size() == 1 && prev[bad[B][0]].a - shared < J;
            if (!aR && !bL)
                continue;
            if (aR && bL) {
                act[ci] = Act::dissolve;
                continue;
            }
            bool merge_here = false;
            const auto& donor_bad = aR ? bad[B] : bad[A];
            for (std::size_t j : donor_bad) {
                const long dist = aR ? prev[j].a - shared : shared - prev[j].b;
                if (dist < W) {
                    merge_here = true;
                    break;
                }
            }
            if (merge_here) {
                act[ci] = Act::dissolve;
                continue;
            }
            // Snap the moved cut to a child boundary just past distance J;
            // with no internal boundary in the window, merge instead.
            bool found = false;
            std::size_t nc = 0;
            if (aR) {
                const long z = shared + J;
                const std::size_t hi = cuts[ci + 1];
                if (hi - c >= 2) {
                    for (std::size_t t = hi - 2;; --t) {
                        if (prev[t].b <= z) {
                            nc = t + 1;
                            found = true;
                            break;
                        }
                        if (t == c)
                            break;
                    }
                }
            } else {
                const long z = shared - J;
                for (std::size_t t = cuts[ci - 1] + 1; t < c; ++t) {
                    if (prev[t].a >= z) {
                        nc = t;
                        found = true;
                        break;
                    }
                }
            }
            if (found) {
                act[ci] = Act::shift;
                newval[ci] = nc;
            } else {
                act[ci] = Act::dissolve;
            }
        }

        bool any = false;
        for (std::size_t ci = 1; ci + 1 < m; ++ci)
            any = any || act[ci] != Act::none;
        if (!any)
            break;

        // Two shifts crossing inside a shared donor block merge all three
        // blocks instead.
        auto effval = [&](std::size_t ci) {
            return act[ci] == Act::shift ? newval[ci] : cuts[ci];
        };
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t ci = 1; ci + 2 < m; ++ci) {
                if (act[ci] != Act::dissolve && act[ci + 1] != Act::dissolve &&
                    effval(ci) >= effval(ci + 1)) {
                    act[ci] = Act::dissolve;
                    act[ci + 1] = Act::dissolve;
                    changed = true;
                }
            }
            // A block absorbed by a merge no longer requests its shift.
            for (std::size_t ci = 1; ci + 1 < m; ++ci) {
                if (act[ci] != Act::shift)
                    continue;
                const std::size_t other = newval[ci] > cuts[ci] ? ci - 1 : ci + 1;
                if (act[other] == Act::dissolve) {
                    act[ci] = Act::none;
                    changed = true;
                }
            }
        }

        std::vector<std::size_t> next_cuts;
        next_cuts.push_back(cuts.front());
        for (std::size_t ci = 1; ci + 1 < m; ++ci) {
            if (act[ci] == Act::dissolve) {
                log.push_back({k, "merge", prev[cuts[ci]].a});
                continue;
            }
            if (act[ci] == Act::shift)
                log.push_back({k, "shift", prev[newval[ci]].a});
            next_cuts.push_back(effval(ci));
        }
        next_cuts.push_back(cuts.back());
        cuts = std::move(next_cuts);
    }

    std::vector<Range> ranges;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        ranges.push_back({cuts[i], cuts[i + 1]});

    RangeView view{&prev};

    // Resolution: Good concatenates child pedestals; Hopeful attempts a
    // bridging edge over the defect (extremal blocks may instead start or
    // end the path just past a defect hugging the outer boundary).
    std::vector<Block> out;
    out.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        const Range& r = ranges[i];
        Block blk;
        blk.level = k;
        blk.a = view.a(r);
        blk.b = view.b(r);
        for (std::size_t j = r.cb; j < r.ce; ++j)
            blk.children.push_back(j);
        const auto bad = view.bad_children(r);
        for (std::size_t j : bad)
            blk.defects.push_back(j - r.cb);
        if (bad.empty()) {
            blk.tag = Tag::Good;
            blk.final_good = true;
            for (std::size_t j = r.cb; j < r.ce; ++j)
                concat_pedestal(blk.pedestal, prev[j].pedestal);
        } else if (bad.size() >= 2) {
            blk.tag = Tag::Bad;
            blk.final_good = false;
        } else {
            blk.tag = Tag::Hopeful;
            const std::size_t d = bad[0];
            const long da = prev[d].a;
            const long db = prev[d].b;
            const bool left_extremal = (i == 0) && (da - blk.a < J);
            const bool right_extremal = (i + 1 == ranges.size()) && (blk.b - db < J);
            if (left_extremal && db - blk.a <= J && d + 1 < r.ce) {
                blk.final_good = true;
                blk.forced_extremal = true;
                blk.has_defected_part = true;
                blk.dp_lo = blk.a;
                blk.dp_hi = db - 1;
                for (std::size_t j = d + 1; j < r.ce; ++j)
                    concat_pedestal(blk.pedestal, prev[j].pedestal);
                log.push_back({k, "forced-good", blk.a});
            } else if (right_extremal && blk.b - da <= J && d > r.cb) {
                blk.final_good = true;
                blk.forced_extremal = true;
                blk.has_defected_part = true;
                blk.dp_lo = da + 1;
                blk.dp_hi = blk.b;
                for (std::size_t j = r.cb; j < d; ++j)
                    concat_pedestal(blk.pedestal, prev[j].pedestal);
                log.push_back({k, "forced-good", blk.a});
            } else if (d == r.cb || d + 1 == r.ce) {
                // No good children on one side: nothing to bridge from.
                blk.final_good = false;
            } else {
                Pedestal left, right;
                for (std::size_t j = r.cb; j < d; ++j)
                    concat_pedestal(left, prev[j].pedestal);
                for (std::size_t j = d + 1; j < r.ce; ++j)
                    concat_pedestal(right, prev[j].pedestal);
                auto bridge = find_bridge(config, left, right, da, db, J);
                if (bridge) {
                    const auto [x, y] = *bridge;
                    blk.final_good = true;
                    blk.bridged = true;
                    blk.has_defected_part = true;
                    blk.dp_lo = x + 1;
                    blk.dp_hi = y - 1;
                    Pedestal ped;
                    for (long v : left.vertices)
                        if (v <= x)
                            ped.vertices.push_back(v);
                    for (long v : right.vertices)
                        if (v >= y)
                            ped.vertices.push_back(v);
                    for (const auto& br : left.bridges)
                        if (br.y <= x)
                            ped.bridges.push_back(br);
                    ped.bridges.push_back({x, y, k});
                    for (const auto& br : right.bridges)
                        if (br.x >= y)
                            ped.bridges.push_back(br);
                    blk.pedestal = std::move(ped);
                } else {
                    blk.final_good = false;
                }
            }
        }
        out.push_back(std::move(blk));
    }
    return {std::move(out), std::move(log)};
}

Itinerary run_renormalization(const Configuration& config, const ScaleParams& scales,
                              Rng* shuffle) {
    if (config.L != scales.L())
        throw DomainError("configuration volume must equal l_M");
    Itinerary it;
    it.levels.push_back(classify_level0(config));
    for (int k = 1; k <= scales.M; ++k) {
        auto [blocks, log] = build_level(config, it.levels.back(), k, scales, shuffle);
        it.levels.push_back(std::move(blocks));
        it.log.insert(it.log.end(), log.begin(), log.end());
    }
    return it;
}

bool check_origin_shielding(const Itinerary& itinerary, const ScaleParams& scales) {
    for (int k = 1; k <= scales.M; ++k) {
        const auto& blocks = itinerary.levels[static_cast<std::size_t>(k) - 1];
        std::size_t j0 = blocks.size();
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            if (blocks[j].a <= 0 && 0 < blocks[j].b) {
                j0 = j;
                break;
            }
        }
        if (j0 == blocks.size())
            j0 = blocks.size() - 1; // origin at the right edge (degenerate)
        const long m = scales.jump_cap(k) / scales.scales[static_cast<std::size_t>(k) - 1];
        const std::size_t lo = j0 >= static_cast<std::size_t>(m) ? j0 - static_cast<std::size_t>(m) : 0;
        const std::size_t hi = std::min(blocks.size() - 1, j0 + static_cast<std::size_t>(m));
        for (std::size_t j = lo; j <= hi; ++j)
            if (!blocks[j].final_good)
                return false;
    }
    return true;
}

PedestalDensityReport pedestal_density_check(const Itinerary& itinerary,
                                             const ScaleParams& scales) {
    PedestalDensityReport rep;
    bool first = true;
    for (int k = 1; k <= scales.M; ++k) {
        const double cap_real = std::pow(
            static_cast<double>(scales.scales[static_cast<std::size_t>(k)]),
            scales.alpha_prime / scales.alpha);
        const long J = scales.jump_cap(k);
        const auto& blocks = itinerary.levels[static_cast<std::size_t>(k)];
        const auto& prev = itinerary.levels[static_cast<std::size_t>(k) - 1];
        for (const auto& blk : blocks) {
            if (!blk.final_good)
                continue;
            std::vector<long> uni;
            for (std::size_t j : blk.children) {
                if (!prev[j].final_good)
                    continue;
                uni.insert(uni.end(), prev[j].pedestal.vertices.begin(),
                           prev[j].pedestal.vertices.end());
            }
            std::sort(uni.begin(), uni.end());
            uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
            const double slack = static_cast<double>(blk.pedestal.vertices.size()) -
                                 (static_cast<double>(uni.size()) - cap_real);
            if (first || slack < rep.min_slack)
                rep.min_slack = slack;
            first = false;
            ++rep.blocks_checked;
            if (slack < 0.0) {
                rep.pass = false;
                ++rep.violations;
            }
            if (blk.bridged) {
                const long x = blk.dp_lo - 1;
                const long y = blk.dp_hi + 1;
                for (auto [wlo, whi] : {std::pair<long, long>{x - J, x},
                                        std::pair<long, long>{y, y + J}}) {
                    const long lo = std::max(wlo, blk.pedestal.vertices.front());
                    const long hi = std::min(whi, blk.pedestal.vertices.back());
                    if (hi < lo)
                        continue;
                    const auto b0 = std::lower_bound(blk.pedestal.vertices.begin(),
                                                     blk.pedestal.vertices.end(), lo);
                    const auto b1 = std::upper_bound(blk.pedestal.vertices.begin(),
                                                     blk.pedestal.vertices.end(), hi);
                    const double density = static_cast<double>(b1 - b0) /
                                           static_cast<double>(hi - lo + 1);
                    rep.min_window_density = std::min(rep.min_window_density, density);
                }
            }
        }
    }
    return rep;
}

bool validate_pedestal(const Configuration& config, const Pedestal& pedestal,
                       const ScaleParams& scales) {
    const auto& vs = pedestal.vertices;
    if (vs.size() < 2)
        return false;
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (vs[i] <= vs[i - 1])
            return false;
    std::size_t used_bridges = 0;
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const long u = vs[i - 1];
        const long v = vs[i];
        const bool open = (v - u == 1) ? config.nn(u) : config.has_long_edge(u, v);
        if (!open)
            return false;
        if (v - u >= 2) {
            // must be certified by a recorded bridge within its level cap
            bool found = false;
            for (const auto& br : pedestal.bridges) {
                if (br.x == u && br.y == v) {
                    if (br.level < 1 || br.level > scales.M)
                        return false;
                    if (v - u > scales.jump_cap(br.level))
                        return false;
                    found = true;
                    break;
                }
            }
            if (!found)
                return false;
            ++used_bridges;
        }
    }
    return used_bridges <= pedestal.bridges.size();
}

} // namespace lrperc

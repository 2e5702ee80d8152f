#include "lrperc/mathutils.hpp"

#include <cmath>
#include <cstdint>

#include "lrperc/errors.hpp"

namespace lrperc {

namespace {

double interval_gap(const RealInterval& I, const RealInterval& Iprime) {
    if (I.hi <= Iprime.lo)
        return Iprime.lo - I.hi;
    if (Iprime.hi <= I.lo)
        return I.lo - Iprime.hi;
    return -1.0;
}

bool is_integer(double v) { return v == std::floor(v); }

} // namespace

double coupling_integral(const RealInterval& I, const RealInterval& Iprime) {
    const double d = interval_gap(I, Iprime);
    if (d <= 0.0)
        throw OverlapError("intervals must be disjoint with positive gap");
    const double a = I.length();
    const double b = Iprime.length();
    return std::log((a + d) * (b + d) / (d * (a + b + d)));
}

LatticeSumReport lattice_sum_bounds_check(const RealInterval& I,
                                          const RealInterval& Iprime) {
    if (!is_integer(I.lo) || !is_integer(I.hi) || !is_integer(Iprime.lo) ||
        !is_integer(Iprime.hi))
        throw DomainError("integer endpoints required");
    const double d = interval_gap(I, Iprime);
    if (d < 3.0)
        throw GapTooSmall("gap must be at least 3");
    LatticeSumReport rep;
    for (long x = static_cast<long>(I.lo); x <= static_cast<long>(I.hi); ++x)
        for (long y = static_cast<long>(Iprime.lo); y <= static_cast<long>(Iprime.hi); ++y) {
            const double diff = static_cast<double>(x - y);
            rep.sum += 1.0 / (diff * diff);
        }
    // The continuum comparison treats the lattice interval [lo, hi] as |I| =
    // hi - lo + 1 unit cells, one per integer point; with the real length
    // hi - lo the bounds fail already for moderate lengths.
    const double n1 = I.length() + 1.0;
    const double n2 = Iprime.length() + 1.0;
    const double J = coupling_integral(RealInterval{0.0, n1},
                                       RealInterval{n1 + d, n1 + d + n2});
    const double cm = (1.0 - 2.0 / d) * (1.0 - 2.0 / d);
    const double cp = (1.0 + 2.0 / d) * (1.0 + 2.0 / d);
    rep.lower = cm * J;
    rep.upper = cp * J;
    rep.pass = rep.lower <= rep.sum && rep.sum <= rep.upper;
    return rep;
}

NestedInequalityReport nested_interval_inequality_check(const RealInterval& I,
                                                        const RealInterval& Iprime,
                                                        const RealInterval& Idoubleprime) {
    NestedInequalityReport rep;
    const double d2 = interval_gap(I, Idoubleprime);
    rep.preconditions_ok = Iprime.lo >= Idoubleprime.lo && Iprime.hi <= Idoubleprime.hi &&
                           d2 >= Idoubleprime.length() && d2 > 0.0 &&
                           interval_gap(I, Iprime) > 0.0 && Idoubleprime.length() > 0.0;
    if (!rep.preconditions_ok)
        return rep;
    rep.lhs = coupling_integral(I, Iprime);
    rep.rhs = 4.0 * (Iprime.length() / Idoubleprime.length()) *
              coupling_integral(I, Idoubleprime);
    rep.pass = rep.lhs <= rep.rhs;
    return rep;
}

double convex_constant(int N) {
    if (N < 1)
        throw DomainError("N >= 1 required");
    return std::exp2(1.0 / static_cast<double>(N)) - 1.0;
}

ConvexIdentityReport convex_identity_check(const std::vector<double>& gammas,
                                           const std::vector<double>& deltas) {
    if (gammas.size() != deltas.size())
        throw LengthMismatch("gammas and deltas differ in length");
    const int N = static_cast<int>(gammas.size());
    if (N < 1 || N > 20)
        throw DomainError("1 <= N <= 20 required");
    const double c = convex_constant(N);
    ConvexIdentityReport rep;
    rep.c_inverse_bound_ok = 1.0 / c <= static_cast<double>(N) / std::log(2.0);

    // sum over nonempty subsets of c^{|J|}, grouped by subset size
    double binom = 1.0; // C(N, m)
    for (int m = 1; m <= N; ++m) {
        binom = binom * static_cast<double>(N - m + 1) / static_cast<double>(m);
        rep.subset_weight_sum += binom * std::pow(c, m);
    }

    rep.lhs = 1.0;
    double prod_gamma = 1.0;
    for (int i = 0; i < N; ++i) {
        rep.lhs *= gammas[static_cast<std::size_t>(i)] + deltas[static_cast<std::size_t>(i)];
        prod_gamma *= gammas[static_cast<std::size_t>(i)];
    }

    for (std::uint32_t J = 1; J < (1u << N); ++J) {
        double mixed = 1.0;
        int sz = 0;
        for (int i = 0; i < N; ++i) {
            if ((J >> i) & 1u) {
                mixed *= deltas[static_cast<std::size_t>(i)];
                ++sz;
            } else {
                mixed *= gammas[static_cast<std::size_t>(i)];
            }
        }
        const double cJ = std::pow(c, sz);
        rep.rhs += cJ * (prod_gamma + mixed / cJ);
    }
    rep.residual = std::fabs(rep.lhs - rep.rhs);
    return rep;
}

} // namespace lrperc

#pragma once

#include <vector>

namespace lrperc {

struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// J(I, I') = integral over I x I' of |x-y|^{-2} = ln[(|I|+d)(|I'|+d) / (d(|I|+|I'|+d))]
// for disjoint intervals at distance d > 0.
double coupling_integral(const RealInterval& I, const RealInterval& Iprime);

struct LatticeSumReport {
    double sum = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool pass = false;
};

// Compares the lattice sum over integer points with C- J <= sum <= C+ J,
// C+- = (1 +- 2/d)^2; requires integer endpoints and gap d >= 3.
LatticeSumReport lattice_sum_bounds_check(const RealInterval& I,
                                          const RealInterval& Iprime);

struct NestedInequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool preconditions_ok = false;
    bool pass = false;
};

// J(I, I') <= 4 (|I'|/|I''|) J(I, I'') for I' contained in I'' with
// dist(I, I'') >= |I''|.
NestedInequalityReport nested_interval_inequality_check(const RealInterval& I,
                                                        const RealInterval& Iprime,
                                                        const RealInterval& Idoubleprime);

struct ConvexIdentityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double subset_weight_sum = 0.0; // should be 1
    bool c_inverse_bound_ok = false; // 1/c_N <= N / ln 2
};

// prod(gamma_i + Delta_i) expanded over nonempty subsets with weights
// c_N^{|J|}, c_N = 2^{1/N} - 1. Full 2^N expansion; N <= 20.
ConvexIdentityReport convex_identity_check(const std::vector<double>& gammas,
                                           const std::vector<double>& deltas);

double convex_constant(int N); // c_N = 2^{1/N} - 1

} // namespace lrperc

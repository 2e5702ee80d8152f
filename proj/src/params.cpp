#include "lrperc/params.hpp"

#include <cmath>
#include <cstdlib>

namespace lrperc {

void ModelParams::validate() const {
    if (!(beta > 0.0))
        throw DomainError("beta must be positive");
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("p must lie in (0,1)");
    if (!(kappa >= 1.0))
        throw DomainError("kappa must be >= 1");
}

double edge_open_probability(long x, long y, const ModelParams& params) {
    if (x == y)
        throw SelfLoop("edge endpoints coincide");
    const long d = std::labs(x - y);
    if (d == 1)
        return params.p;
    return -std::expm1(-params.beta / (static_cast<double>(d) * static_cast<double>(d)));
}

long floor_power(long base, double exponent) {
    // floor(base^exponent) with a +-1 guard against pow() rounding at
    // integer boundaries.
    long double v = std::pow(static_cast<long double>(base), static_cast<long double>(exponent));
    long f = static_cast<long>(std::floor(v));
    while (f > 0 && static_cast<long double>(f) > v)
        --f;
    while (static_cast<long double>(f + 1) <= v)
        ++f;
    return f;
}

std::vector<long> scale_sequence(long l1, double alpha, int M) {
    if (l1 < 2 || !(alpha > 1.0 && alpha < 2.0) || M < 1)
        throw DomainError("scale_sequence precondition violated");
    if (floor_power(l1, alpha - 1.0) < 2)
        throw DegenerateScale("floor(l1^(alpha-1)) < 2: scale sequence stalls");
    std::vector<long> s;
    s.reserve(static_cast<std::size_t>(M) + 1);
    s.push_back(1);
    s.push_back(l1);
    for (int k = 2; k <= M; ++k) {
        long prev = s.back();
        long factor = floor_power(prev, alpha - 1.0);
        s.push_back(factor * prev);
    }
    return s;
}

ScaleParams ScaleParams::make(long l1, double alpha, double alpha_prime,
                              double delta, double eta, int M) {
    ScaleParams sp;
    sp.alpha = alpha;
    sp.alpha_prime = alpha_prime;
    sp.delta = delta;
    sp.eta = eta;
    sp.l1 = l1;
    sp.M = M;
    sp.scales = scale_sequence(l1, alpha, M);
    sp.validate();
    return sp;
}

void ScaleParams::validate() const {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw DomainError("alpha must lie in (1,2)");
    if (!(alpha_prime > 1.0 && alpha_prime < alpha))
        throw DomainError("alpha_prime must lie in (1, alpha)");
    if (!(delta > 0.0))
        throw DomainError("delta must be positive");
    if (!(eta >= 0.0 && eta < 1.0))
        throw DomainError("eta must lie in [0,1)");
    if (l1 < 2 || M < 1)
        throw DomainError("l1 >= 2 and M >= 1 required");
    if (scales.size() != static_cast<std::size_t>(M) + 1 || scales[0] != 1 || scales[1] != l1)
        throw DomainError("scale ladder inconsistent");
}

long ScaleParams::jump_cap(int k) const {
    if (k < 1 || k > M)
        throw DomainError("jump_cap level out of range");
    return floor_power(scales[static_cast<std::size_t>(k)], alpha_prime / alpha);
}

FeasibilityReport check_feasibility(double beta, double alpha,
                                    double alpha_prime, double delta,
                                    double eta) {
    if (!(beta > 1.0) || !(alpha_prime > 1.0) || !(alpha_prime < alpha) ||
        !(alpha < 2.0) || !(eta >= 0.0 && eta < 1.0) || !(delta > 0.0))
        throw DomainError("check_feasibility precondition violated");
    FeasibilityReport rep;
    auto add = [&rep](const std::string& name, double lhs, double rhs) {
        rep.lines.push_back({name, lhs, rhs, lhs > rhs});
    };
    add("beta*(alpha'-1) > alpha*(alpha-1)/(2-alpha)", beta * (alpha_prime - 1.0),
        alpha * (alpha - 1.0) / (2.0 - alpha));
    add("delta > 2*(alpha-1)/(2-alpha)", delta, 2.0 * (alpha - 1.0) / (2.0 - alpha));
    add("beta*(1-eta)*(alpha'-1) - delta*(alpha-1) > alpha-1",
        beta * (1.0 - eta) * (alpha_prime - 1.0) - delta * (alpha - 1.0), alpha - 1.0);
    rep.feasible = true;
    for (const auto& l : rep.lines)
        rep.feasible = rep.feasible && l.ok;
    return rep;
}

double p_threshold(double kappa, long l1, double delta) {
    if (!(kappa >= 1.0) || l1 < 2 || !(delta > 0.0))
        throw DomainError("p_threshold precondition violated");
    const double ln2 = std::log(2.0);
    const double c = std::pow(ln2, 5.0) / 128.0;
    return 1.0 - c / (kappa * kappa) * std::pow(static_cast<double>(l1), -delta - 1.0);
}

LowerBoundReport percolation_lower_bound(double p, const ScaleParams& scales) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("p must lie in (0,1)");
    // Only ladder consistency is required here; delta <= 0 is let through so
    // the non-positive-factor flag is reachable.
    if (scales.scales.size() != static_cast<std::size_t>(scales.M) + 1 ||
        scales.scales[0] != 1 || scales.scales[1] != scales.l1)
        throw DomainError("scale ladder inconsistent");
    LowerBoundReport rep;
    long double log_sum = 0.0L;
    log_sum += static_cast<long double>(scales.jump_cap(1)) * std::log(static_cast<long double>(p));
    for (int k = 2; k <= scales.M; ++k) {
        const long lkm1 = scales.scales[static_cast<std::size_t>(k) - 1];
        const long double base =
            1.0L - std::pow(static_cast<long double>(lkm1), -static_cast<long double>(scales.delta));
        if (base <= 0.0L) {
            rep.nonpositive_factor = true;
            rep.value = 0.0;
            rep.log_value = -INFINITY;
            return rep;
        }
        const long expo = scales.jump_cap(k) / lkm1;
        log_sum += static_cast<long double>(expo) * std::log(base);
    }
    rep.log_value = static_cast<double>(log_sum);
    rep.value = static_cast<double>(std::exp(log_sum));
    return rep;
}

} // namespace lrperc

#include "lrperc/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lrperc/errors.hpp"

namespace lrperc {

WilsonInterval wilson_interval(std::uint64_t k, std::uint64_t n) {
    if (n < 1 || k > n)
        throw DomainError("wilson_interval needs 0 <= k <= n, n >= 1");
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonInterval w;
    w.estimate = phat;
    // exact endpoints at the boundary counts; avoids rounding residue
    w.low = k == 0 ? 0.0 : std::max(0.0, center - half);
    w.high = k == n ? 1.0 : std::min(1.0, center + half);
    return w;
}

} // namespace lrperc

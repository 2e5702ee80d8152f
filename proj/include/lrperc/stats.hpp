#pragma once

#include <cstdint>

namespace lrperc {

struct WilsonInterval {
    double estimate = 0.0;
    double low = 0.0;
    double high = 0.0;
};

// 95% Wilson score interval for k successes in n trials.
WilsonInterval wilson_interval(std::uint64_t k, std::uint64_t n);

} // namespace lrperc

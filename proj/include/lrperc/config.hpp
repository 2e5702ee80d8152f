#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "lrperc/params.hpp"

namespace lrperc {

// Sparse open-edge set on the vertex range [-L, L]: a bitmap for the 2L
// nearest-neighbor edges plus a sorted list of longer edges.
struct Configuration {
    long L = 0;
    std::vector<std::uint8_t> nn_open; // index i+L <-> edge {i, i+1}, i in [-L, L-1]
    std::vector<std::pair<long, long>> long_edges; // (x, y), x < y-1, sorted

    bool nn(long i) const { return nn_open[static_cast<std::size_t>(i + L)] != 0; }
    void set_nn(long i, bool open) { nn_open[static_cast<std::size_t>(i + L)] = open ? 1 : 0; }
    bool has_long_edge(long x, long y) const;

    void validate() const;
    bool operator==(const Configuration& other) const = default;
};

Configuration make_empty_configuration(long L);

enum class SampleMode { naive, skip };

Configuration sample_configuration(const ModelParams& model, long L,
                                   std::uint64_t seed, SampleMode mode);

// Exhaustive support of the product measure on [-L, L]; requires <= 24 edges.
std::vector<std::pair<Configuration, double>>
enumerate_all_configurations(const ModelParams& model, long L);

long edge_count(long L);

// Text format: "lrperc-config v1 L=<L>" / "nn <bitstring>" / "e <x> <y>" lines.
void write_configuration(std::ostream& os, const Configuration& config);
Configuration read_configuration(std::istream& is);

} // namespace lrperc

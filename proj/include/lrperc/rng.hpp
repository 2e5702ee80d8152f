#pragma once

#include <cstdint>

namespace lrperc {

// splitmix64 finalizer; used for seed derivation and generator seeding.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Per-trial stream key: reproducible independent of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream + 0x5851f42d4c957f2dull));
}

// xoshiro256**; self-contained so streams are bit-stable across platforms
// and standard-library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : s_) {
            z = mix64(z);
            w = z;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in (0,1], safe as argument of log
    double uniform_pos() { return 1.0 - uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // Lemire-style rejection-free enough for test workloads; use
        // plain modulo of a 128-bit product to avoid bias.
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace lrperc

#pragma once

#include <cstdint>

namespace hgineq {

/// Counter-based generator: output i of stream s under seed k is a pure function of (k, s, i),
/// so blocks of a parallel estimate reproduce regardless of scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ (stream + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t next() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace hgineq

#pragma once

#include <cstdint>

namespace qe {

/// Deterministic seeded generator (splitmix64). Used by every randomized
/// suite so that identical seeds give identical trials on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [lo, hi] inclusive.
    long uniform_int(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<long>(next_u64() % span);
    }

    int sign() { return (next_u64() & 1u) ? 1 : -1; }

private:
    std::uint64_t state_;
};

} // namespace qe

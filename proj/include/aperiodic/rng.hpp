#pragma once

#include <cstdint>

namespace aperiodic {

/// Counter-based generator built on the SplitMix64 finalizer. Sample i of a
/// stream is a pure function of (seed, i), so totals are independent of how
/// a sample index range is partitioned across workers.
struct SplitMix64 {
    static constexpr const char* algorithm = "splitmix64-counter";

    std::uint64_t seed = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t counter) const {
        return mix(seed ^ mix(counter + 0x243f6a8885a308d3ULL));
    }

    /// Uniform double in [0, 1) from counter value.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
        return at(counter) % n;
    }
};

} // namespace aperiodic

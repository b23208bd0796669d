#pragma once

#include <cstdint>

namespace qcfa {

// Counter-based stream generator built on the splitmix64 finalizer.
// A stream is keyed by (seed, stream id); draw n is a hash of the key
// and the counter, so trajectory i's randomness is independent of the
// order in which trajectories are executed.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) : key_(mix(mix(seed) ^ (stream + 0x9e3779b97f4a7c15ull))) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace qcfa

#pragma once

#include <cstdint>
#include <limits>

namespace share_sense {

enum class StreamPurpose : std::uint64_t {
    kAgentBatch = 1,
    kArrival = 2,
    kInstance = 3,
};

/// Counter-based generator: a SplitMix64 sequence whose starting point is a
/// hash of (seed, trial, draw, purpose). Any stream can be reconstructed from
/// its key alone, so results do not depend on which worker produced them.
/// Satisfies UniformRandomBitGenerator.
class StreamRng {
public:
    using result_type = std::uint64_t;

    StreamRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw, StreamPurpose purpose)
        : state_(key(seed, trial, draw, purpose)) {}

    explicit StreamRng(std::uint64_t seed) : state_(mix(seed)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw,
                                       StreamPurpose purpose) {
        std::uint64_t h = mix(seed ^ 0x243F6A8885A308D3ULL);
        h = mix(h ^ (static_cast<std::uint64_t>(purpose) * 0x13198A2E03707344ULL));
        h = mix(h ^ (trial + 0xA4093822299F31D0ULL));
        h = mix(h ^ (draw + 0x082EFA98EC4E6C89ULL));
        return h;
    }

    std::uint64_t state_;
};

}  // namespace share_sense

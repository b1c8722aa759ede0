#pragma once

// Seedable deterministic randomness. Every stochastic piece of the project
// (Gaussian drive signals, measurement noise, derived initial conditions)
// draws from a splitmix64 stream so a whole experiment reproduces from one
// master seed.

#include <cmath>
#include <cstdint>

namespace chaoticlms {

// splitmix64 (Vigna). 64-bit state, one multiply-xor-shift chain per output.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in the open interval (0,1): 53 high bits plus half an lsb,
    // so log() in Box-Muller never sees zero.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }
};

// Independent substream for (master seed, index). Runs launched in parallel
// each take their own substream, so results do not depend on scheduling.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 s(master ^ (0xd1342543de82ef95ULL * (index + 1)));
    s.next();
    return s.next();
}

// Box-Muller transform over a SplitMix64 stream; keeps the second deviate
// of each pair so consecutive calls consume uniforms in a fixed pattern.
struct GaussianBoxMuller {
    bool has_spare = false;
    double spare = 0.0;

    double operator()(SplitMix64& rng) {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        const double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare = r * std::sin(theta);
        has_spare = true;
        return r * std::cos(theta);
    }
};

} // namespace chaoticlms

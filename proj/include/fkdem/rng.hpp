#pragma once

#include <cmath>
#include <cstdint>

namespace fkdem {

// Counter-free splitmix64 stream. Used instead of <random> engines so that
// trajectories are bit-for-bit reproducible across platforms and standard
// library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Exponential with the given mean; mean == 0 degenerates to 0.
    double exponential(double mean) {
        double u = uniform01();
        return -mean * std::log1p(-u);
    }

private:
    std::uint64_t state_;
};

// Derives the state of an independent substream from a base seed and a
// stream index. Two finalizer rounds decorrelate neighbouring indices.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    for (int i = 0; i < 2; ++i) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
    }
    return z;
}

}  // namespace fkdem

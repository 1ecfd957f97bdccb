#pragma once

#include <cstdint>
#include <vector>

#include "tlcr/image.hpp"

namespace tlcr {

/// Deterministic 64-bit generator with portable real and integer draws
/// (the standard distributions are implementation-defined).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept;

private:
    std::uint64_t state_;
};

/// Procedural, pre-aligned face-like images: head ellipse with hair, brows,
/// eyes, nose and mouth on a shared layout, with per-identity jitter of shape,
/// placement and shading. Identity i depends only on (seed, i).
std::vector<ImageBuffer> synth_faces(int count, std::uint64_t seed, int width = 100, int height = 120);

ImageBuffer synth_face(std::uint64_t seed, int identity, int width, int height);

} // namespace tlcr

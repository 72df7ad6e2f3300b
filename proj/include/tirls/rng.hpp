#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace tirls {

/**
 * Deterministic normal generator.
 *
 * Engine: std::mt19937_64 seeded with the 64-bit seed (its output sequence is
 * fixed by the C++ standard). Uniforms are (engine() >> 11) * 2^-53 in [0, 1).
 * Normals use the Box-Muller transform on u1 = 1 - uniform(), u2 = uniform():
 * r = sqrt(-2 ln u1), returning r cos(2 pi u2) first and caching r sin(2 pi u2)
 * for the next call. Any implementation following these steps reproduces the
 * streams bit for bit on IEEE-754 hardware with a correctly rounded libm.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Seed for an independent stream derived from (seed, stream) by SplitMix64.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

    double uniform();
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace tirls

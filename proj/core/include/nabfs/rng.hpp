#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nabfs {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t kSeedGamma = 0x9E3779B97F4A7C15ull;

// Fixed stream tags so independent consumers of one master seed never share
// an engine state.
enum class SeedStream : std::uint64_t {
    NoiseAugment = 1,
    BootstrapDraw = 2,
    BootstrapRedraw = 3,
    LearnerFit = 4,
    NaiveFit = 5,
    SimData = 6,
    SimSelect = 7,
    SimBeta = 8,
    Holdout = 9,
    EvalFit = 10,
    ForestTree = 11,
    Probe = 12,
};

// Counter-derived substream seed. For a fixed (master, stream) the map
// index -> seed is injective, so per-replicate seeds are pairwise distinct.
constexpr std::uint64_t substream_seed(std::uint64_t master, SeedStream stream,
                                       std::uint64_t index = 0) noexcept {
    const std::uint64_t base =
        mix64(master + kSeedGamma * (static_cast<std::uint64_t>(stream) + 1));
    return mix64(base + kSeedGamma * index);
}

// Deterministic random stream: the engine is the standard-specified
// mt19937_64 and every distribution is generated explicitly here, so a given
// seed produces the same draws on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Uniform integer on [0, n); n >= 1. Multiply-shift range reduction.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller; consumes exactly two words per call.
    double next_normal() {
        const double u1 =
            (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double next_normal(double mean, double sd) {
        return mean + sd * next_normal();
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace nabfs

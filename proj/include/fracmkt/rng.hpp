#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace fracmkt {

/// splitmix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for experiment `experiment` of grid point `value_index` under `master`.
/// Pure function of its arguments, so results never depend on worker scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t value_index,
                                    std::uint64_t experiment) {
    return mix64(mix64(mix64(master) ^ value_index) ^ (experiment * 0xD1B54A32D192ED03ULL));
}

/// Seedable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The std:: distributions are implementation-defined, so every
/// derived draw (reals, bounded integers, normals, shuffles) is written out
/// here to keep streams identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// True with probability p (draw < p).
    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n);

    /// Standard normal via Box-Muller (one variate per call).
    double normal();

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// k distinct indices drawn uniformly from [0, n), in draw order. k is clamped to n.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::mt19937_64 engine_;
};

}  // namespace fracmkt

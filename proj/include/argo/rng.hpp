#pragma once

#include <cstdint>
#include <random>

namespace argo {

/// SplitMix64 finalizer; used to derive independent seeds.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the `index`-th substream of `seed`.
[[nodiscard]] constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/**
 * @brief Portable random stream.
 *
 * std::mt19937_64 has a standard-mandated output sequence, but the standard
 * distributions do not. All variates are derived here from raw engine output so
 * that a fixed seed yields identical draws on every platform.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

    /// Uniform on (0, 1]; never returns 0.
    [[nodiscard]] double uniform_open0() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform on [0, 1).
    [[nodiscard]] double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer on [0, n), unbiased (rejection sampling). Requires n > 0.
    [[nodiscard]] std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal via the Marsaglia polar method.
    [[nodiscard]] double normal();

    /// Geometric on {1, 2, ...} with success probability p in (0, 1].
    /// p == 1 returns 1 without consuming the stream.
    [[nodiscard]] std::uint64_t geometric(double p);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace argo

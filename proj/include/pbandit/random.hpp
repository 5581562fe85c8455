#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace pbandit {

/// Name and version of the stream generator. Written into every CSV header;
/// changing any sampler below must bump the version.
inline constexpr std::string_view kGeneratorName = "xoshiro256** seeded by splitmix64; pbandit samplers v1";

/// SplitMix64 output finalizer (Stafford mix 13). A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the stream owned by one (policy, trajectory) pair.
///
///   s1 = mix64(base + 0x9E3779B97F4A7C15 * (policy + 1))
///   seed = mix64(s1 ^ (trajectory * 0xD1B54A32D192ED03 + 0x8CB92BA72F3D8DD7))
///
/// For a fixed (base, policy) the map trajectory -> seed is injective.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t policy_index,
                                    std::uint64_t trajectory_index) noexcept {
    const std::uint64_t s1 = mix64(base_seed + 0x9E3779B97F4A7C15ULL * (policy_index + 1));
    return mix64(s1 ^ (trajectory_index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

/// xoshiro256** with its state filled from a splitmix64 sequence.
/// Satisfies UniformRandomBitGenerator, but the samplers below never go through
/// <random> distributions, whose output is implementation-defined.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept;
    double standard_normal() noexcept;
    double standard_exponential() noexcept;
    /// Gamma(shape, scale 1); shape > 0.
    double gamma(double shape) noexcept;
    /// Beta(a, b); a, b > 0.
    double beta(double a, double b) noexcept;
    /// Poisson(mean); mean >= 0.
    std::int64_t poisson(double mean) noexcept;

private:
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace pbandit

#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace cumcal {

// SplitMix64 finalizer: a bijective avalanche mix of a 64-bit word.
constexpr auto mix64(std::uint64_t z) noexcept -> std::uint64_t
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives a child seed from a master seed and a sequence of stream indices.
// Distinct index tuples give statistically independent streams.
constexpr auto derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> indices) noexcept
    -> std::uint64_t
{
    auto h = mix64(master + 0x9e3779b97f4a7c15ULL);
    for (auto const index : indices) h = mix64(h ^ mix64(index + 0x632be59bd9b4e019ULL));
    return h;
}

// Uniform double in [0, 1) determined entirely by (seed, index).
constexpr auto counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept -> double
{
    auto const bits = mix64(seed ^ mix64(index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/*
    SplitMix64 as a UniformRandomBitGenerator.

    Each engine is a counter walking a Weyl sequence, so an engine seeded from derive_seed(seed, {i}) gives the
    per-index streams that the parallel kernels rely on for schedule-independent results.
*/
class SplitMix64
{
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_{seed} {}

    static constexpr auto min() noexcept -> result_type { return 0; }
    static constexpr auto max() noexcept -> result_type { return std::numeric_limits<result_type>::max(); }

    constexpr auto operator()() noexcept -> result_type
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in (0, 1]; safe as a log() argument.
    constexpr auto open_uniform() noexcept -> double
    {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace cumcal

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hybridsec {

using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive a child seed from a parent seed and a path of integer keys,
/// e.g. derive_seed(seed, {trial, link}). Distinct paths give statistically
/// independent streams; the result depends only on the inputs.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> keys) noexcept
{
    std::uint64_t state = splitmix64(seed);
    for (std::uint64_t key : keys) {
        state = splitmix64(state ^ splitmix64(key + 0x632be59bd9b4e019ULL));
    }
    return state;
}

inline RandomStream make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
{
    return RandomStream(derive_seed(seed, keys));
}

} // namespace hybridsec

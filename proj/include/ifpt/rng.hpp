// SPDX-License-Identifier: MIT
//
// Counter-based normal variates: the value for (seed, stream, path, step) is a
// pure function of those four integers, so parallel generation cannot change
// results.
#pragma once

#include <cstdint>

namespace ifpt {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL)))
    {
    }

    /// Uniform on (0, 1) from 53 random bits, never 0 or 1.
    double uniform(std::uint64_t path, std::uint64_t step, std::uint64_t lane = 0) const noexcept;

    /// Standard normal by Box-Muller on two independent uniforms.
    double normal(std::uint64_t path, std::uint64_t step) const noexcept;

private:
    std::uint64_t key_;
};

}  // namespace ifpt

// SPDX-License-Identifier: MIT
#include "ifpt/rng.hpp"

#include <cmath>
#include <numbers>

namespace ifpt {

double CounterRng::uniform(std::uint64_t path, std::uint64_t step, std::uint64_t lane) const noexcept
{
    std::uint64_t h = splitmix64(key_ ^ splitmix64(path));
    h = splitmix64(h ^ (step * 0x9e3779b97f4a7c15ULL) ^ (lane << 1 | 1ULL));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t path, std::uint64_t step) const noexcept
{
    const double u1 = uniform(path, step, 0);
    const double u2 = uniform(path, step, 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ifpt

// SPDX-License-Identifier: MIT
#include "ifpt/numerics.hpp"

#include <cmath>
#include <limits>

namespace ifpt {

double std_normal_pdf(double x)
{
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x)
{
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double survival(double x)
{
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double survival_inv(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::DomainError,
                    "survival_inv requires 0 < p < 1, got " + std::to_string(p));
    }
    double lo = -10.0;
    double hi = 10.0;
    while (survival(hi) > p && hi < 40.0) hi *= 2.0;
    while (survival(lo) < p && lo > -40.0) lo *= 2.0;
    auto f = [p](double x) { return survival(x) - p; };
    return find_root_midpoint(f, {lo, hi}, 1e-15, 400);
}

double mills_ratio(double x)
{
    if (x < 0.0) {
        throw Error(ErrorKind::DomainError, "mills_ratio requires x >= 0");
    }
    if (x < 5.0) return survival(x) / std_normal_pdf(x);

    // 1/(x + 1/(x + 2/(x + 3/(x + ...)))), modified Lentz
    constexpr double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < 500; ++k) {
        d = x + k * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = x + k / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / f;
}

double exp_times_cdf(double a, double z)
{
    if (z > -5.0) return std::exp(a) * std_normal_cdf(z);
    return kInvSqrt2Pi * std::exp(a - 0.5 * z * z) * mills_ratio(-z);
}

}  // namespace ifpt

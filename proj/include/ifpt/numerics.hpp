// SPDX-License-Identifier: MIT
//
// Standard normal functions and the bisection ("middle point") root finder
// shared by both inverse solvers.
#pragma once

#include "ifpt/error.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace ifpt {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kInvSqrt2 = 0.707106781186547524400844362105;
inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr int kDefaultMaxIter = 200;

double std_normal_pdf(double x);

/// Phi(x), evaluated as erfc(-x/sqrt 2)/2 so the lower tail keeps full
/// relative precision.
double std_normal_cdf(double x);

/// Psi(x) = 1 - Phi(x), complementary form (no cancellation for large x).
double survival(double x);

/// x with Psi(x) = p. Throws DomainError unless 0 < p < 1.
double survival_inv(double p);

/// Mills ratio Psi(x)/phi(x) for x >= 0.
double mills_ratio(double x);

/// e^a * Phi(z) without forming e^a or Phi(z) separately when either would
/// overflow or underflow.
double exp_times_cdf(double a, double z);

struct Bracket {
    double lo;
    double hi;
};

struct RootResult {
    double root;
    Bracket final_bracket;
    int iterations;
};

/// Bisection on a sign-changing bracket. Returns the end of the final
/// interval with the smaller |f|; the final width is <= tol unless the
/// interval can no longer be split in binary64.
template <class F>
RootResult bisect(F&& f, Bracket bracket, double tol = kDefaultRootTol,
                  int max_iter = kDefaultMaxIter)
{
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::DomainError, "root tolerance must be positive");
    }
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(lo < hi)) {
        throw Error(ErrorKind::DomainError, "bracket requires lo < hi");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (std::isnan(flo) || std::isnan(fhi) || flo * fhi > 0.0) {
        throw Error(ErrorKind::NoSignChange,
                    "no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (flo == 0.0) return {lo, {lo, lo}, 0};
    if (fhi == 0.0) return {hi, {hi, hi}, 0};

    int it = 0;
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (it == max_iter) {
            throw Error(ErrorKind::MaxIterations,
                        "bisection did not converge in " + std::to_string(max_iter) + " iterations");
        }
        ++it;
        const double fm = f(mid);
        if (fm == 0.0) return {mid, {mid, mid}, it};
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    const double root = std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
    return {root, {lo, hi}, it};
}

template <class F>
double find_root_midpoint(F&& f, Bracket bracket, double tol = kDefaultRootTol,
                          int max_iter = kDefaultMaxIter)
{
    return bisect(std::forward<F>(f), bracket, tol, max_iter).root;
}

}  // namespace ifpt

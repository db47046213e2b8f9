// SPDX-License-Identifier: MIT
#include "ifpt/bridge.hpp"

#include "ifpt/error.hpp"
#include "ifpt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace ifpt {

namespace {

struct Moments {
    double s = 0.0;
    double s2 = 0.0;
};

std::size_t block_count(std::size_t n)
{
    return (n + kReductionBlock - 1) / kReductionBlock;
}

// Sum of v and v^2 over [0, n) in fixed blocks, combined in block order.
template <class F>
Moments reduce(std::size_t n, F&& value)
{
    const std::size_t nb = block_count(n);
    std::vector<Moments> part(nb);
    parallel_blocks(nb, [&](std::size_t b) {
        const std::size_t lo = b * kReductionBlock;
        const std::size_t hi = std::min(n, lo + kReductionBlock);
        Moments m;
        for (std::size_t j = lo; j < hi; ++j) {
            const double v = value(j);
            m.s += v;
            m.s2 += v * v;
        }
        part[b] = m;
    });
    Moments total;
    for (const Moments& m : part) {
        total.s += m.s;
        total.s2 += m.s2;
    }
    return total;
}

McEstimate finish(const Moments& m, std::size_t total, double ess)
{
    McEstimate e;
    const double n = static_cast<double>(total);
    e.mean = m.s / n;
    e.samples = total;
    e.ess = ess;
    if (total > 1) {
        const double var = std::max(0.0, (m.s2 - n * e.mean * e.mean) / (n - 1.0));
        e.std_error = std::sqrt(var / n);
    }
    return e;
}

}  // namespace

double bridge_weight(double y0, double y1, double c0, double c1, double dt)
{
    if (y0 > c0 || y1 > c1) return 0.0;
    return -std::expm1(-2.0 * (c1 - y1) * (c0 - y0) / dt);
}

double segment_cross_mass_H(double beta, double x_n, double c_n, double dt)
{
    const double d = c_n - x_n;
    if (d <= 0.0) return 1.0;
    const double s = std::sqrt(dt);
    const double v = survival((beta * dt + d) / s) + exp_times_cdf(-2.0 * beta * d, (beta * dt - d) / s);
    return std::clamp(v, 0.0, 1.0);
}

unsigned thread_count()
{
    if (const char* env = std::getenv("IFPT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(thread_count(), blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) body(b);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t b = w; b < blocks; b += workers) body(b);
        });
    }
    for (auto& t : pool) t.join();
}

PathEnsemble::PathEnsemble(std::size_t m, std::uint64_t seed, std::uint64_t stream)
    : m_(m), rng_(seed, stream), x_(m, 0.0), w_(m, 1.0), id_(m)
{
    if (m == 0) throw Error(ErrorKind::DomainError, "path ensemble needs at least one path");
    for (std::size_t j = 0; j < m; ++j) id_[j] = j;
}

McEstimate PathEnsemble::extend(double c_prev, double c_new, double dt, bool use_bridge)
{
    if (!(dt > 0.0)) throw Error(ErrorKind::DomainError, "path extension requires dt > 0");
    const std::size_t n = x_.size();
    const double sdt = std::sqrt(dt);
    const std::uint64_t step = step_;
    std::vector<double> lost(n);
    parallel_blocks(block_count(n), [&](std::size_t b) {
        const std::size_t lo = b * kReductionBlock;
        const std::size_t hi = std::min(n, lo + kReductionBlock);
        for (std::size_t j = lo; j < hi; ++j) {
            const double x0 = x_[j];
            const double x1 = x0 + sdt * rng_.normal(id_[j], step);
            double factor = x1 <= c_new ? 1.0 : 0.0;
            if (use_bridge && factor > 0.0) factor = bridge_weight(x0, x1, c_prev, c_new, dt);
            const double w1 = w_[j] * factor;
            lost[j] = w_[j] - w1;
            w_[j] = w1;
            x_[j] = x1;
        }
    });
    ++step_;
    const Moments m = reduce(n, [&](std::size_t j) { return lost[j]; });
    compact();
    return finish(m, m_, ess());
}

void PathEnsemble::compact()
{
    std::size_t k = 0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
        if (w_[j] > 0.0) {
            x_[k] = x_[j];
            w_[k] = w_[j];
            id_[k] = id_[j];
            ++k;
        }
    }
    x_.resize(k);
    w_.resize(k);
    id_.resize(k);
}

double PathEnsemble::mean_weight() const
{
    return reduce(w_.size(), [&](std::size_t j) { return w_[j]; }).s / static_cast<double>(m_);
}

double PathEnsemble::ess() const
{
    const Moments m = reduce(w_.size(), [&](std::size_t j) { return w_[j]; });
    if (m.s2 == 0.0) return 0.0;
    return m.s * m.s / m.s2;
}

McEstimate PathEnsemble::estimate(double beta, double c_n, double dt) const
{
    const Moments m = reduce(x_.size(), [&](std::size_t j) {
        return w_[j] * segment_cross_mass_H(beta, x_[j], c_n, dt);
    });
    return finish(m, m_, ess());
}

double PathEnsemble::estimate_mean(double beta, double c_n, double dt) const
{
    const Moments m = reduce(x_.size(), [&](std::size_t j) {
        return w_[j] * segment_cross_mass_H(beta, x_[j], c_n, dt);
    });
    return m.s / static_cast<double>(m_);
}

McEstimate estimate_lhs(const PathEnsemble& paths, double beta, double c_n, double dt)
{
    const double ess = paths.ess();
    if (ess < kEssThreshold) {
        throw Error(ErrorKind::DegenerateSample,
                    "effective sample size " + std::to_string(ess) + " is below " + std::to_string(kEssThreshold));
    }
    return paths.estimate(beta, c_n, dt);
}

}  // namespace ifpt

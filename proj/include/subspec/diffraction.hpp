#pragma once

#include <cmath>
#include <thread>
#include <vector>

#include "subspec/autocorrelation.hpp"

namespace subspec {

/// Nonnegative density samples over t in [0,1), at t_i = i/G. Values
/// may dip to roundoff-negative; exporters clamp at zero.
struct SpectrumGrid {
    long long resolution = 0;   // G
    long long kernel_order = 0; // K (Fejer order or Riesz depth)
    std::vector<double> values;

    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
};

namespace detail {

/// Deterministic per-cell parallel loop: each cell's value depends only
/// on its own serial computation, so the thread count never changes the
/// output.
template <class Fn>
void parallel_cells(long long count, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (long long i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

/// Fejer-smoothed spectral density
///   f(t) = sum_{|m| <= K} (1 - |m|/(K+1)) eta(m) e^{-2 pi i m t},
/// computed in its explicitly real form. K should stay at or below G/2
/// so the degree-K polynomial is not aliased on the grid.
inline SpectrumGrid fejer_spectrum(const EtaTable& eta, long long K, long long G,
                                   int threads = 1) {
    std::vector<Complex> coeff(static_cast<std::size_t>(K) + 1);
    for (long long m = 0; m <= K; ++m) coeff[static_cast<std::size_t>(m)] = eta.eta(m);
    SpectrumGrid grid;
    grid.resolution = G;
    grid.kernel_order = K;
    grid.values.assign(static_cast<std::size_t>(G), 0.0);
    const double inv = 1.0 / static_cast<double>(K + 1);
    detail::parallel_cells(G, threads, [&](long long i) {
        const double t = static_cast<double>(i) / static_cast<double>(G);
        const Complex z = std::polar(1.0, -kTwoPi * t);
        Complex rot = z;
        double acc = 1.0; // m = 0 term, eta(0) = 1
        for (long long m = 1; m <= K; ++m) {
            const double w = 1.0 - static_cast<double>(m) * inv;
            acc += 2.0 * w * (coeff[static_cast<std::size_t>(m)] * rot).real();
            rot *= z;
        }
        grid.values[static_cast<std::size_t>(i)] = acc;
    });
    return grid;
}

/// Partial generalized Riesz product
///   r_M(t) = prod_{m=0}^{M-1} (1/2) |1 + e^{2 pi i a} e^{2 pi i 2^m t}|^2.
/// Grid phases are exact roots of unity (indexed mod G), so repeated
/// doubling does not drift. Products switch to log space for deep M
/// because r_M(0) grows like 2^M.
inline SpectrumGrid riesz_partial(const Angle& a, int M, long long G, const PhiContext& ctx,
                                  int threads = 1) {
    const Complex alpha = eval_unit(a, ctx);
    std::vector<Complex> root(static_cast<std::size_t>(G));
    for (long long j = 0; j < G; ++j)
        root[static_cast<std::size_t>(j)] = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(G));
    SpectrumGrid grid;
    grid.resolution = G;
    grid.kernel_order = M;
    grid.values.assign(static_cast<std::size_t>(G), 0.0);
    const bool log_space = M > 20;
    detail::parallel_cells(G, threads, [&](long long i) {
        double prod = 1.0, logsum = 0.0;
        bool zero = false;
        long long idx = i % G;
        for (int m = 0; m < M; ++m) {
            const Complex f = 1.0 + alpha * root[static_cast<std::size_t>(idx)];
            const double factor = 0.5 * std::norm(f);
            if (log_space) {
                if (factor <= 0.0) { zero = true; break; }
                logsum += std::log(factor);
            } else {
                prod *= factor;
            }
            idx = (2 * idx) % G;
        }
        grid.values[static_cast<std::size_t>(i)] = log_space ? (zero ? 0.0 : std::exp(logsum)) : prod;
    });
    return grid;
}

/// Wiener statistic (1/(2N+1)) sum_{|m| <= N} |eta(m)|^2; tends to the
/// total squared point mass of the spectral measure.
inline double wiener_l2_mean(const EtaTable& eta, long long N) {
    double s = 1.0; // m = 0
    for (long long m = 1; m <= N; ++m) s += 2.0 * std::norm(eta.eta(m));
    return s / static_cast<double>(2 * N + 1);
}

/// Relative L1 distance between two grids of the same resolution,
/// normalized by the mean of the first.
inline double relative_l1_distance(const SpectrumGrid& a, const SpectrumGrid& b) {
    double diff = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        diff += std::fabs(a.values[i] - b.values[i]);
        mass += std::fabs(a.values[i]);
    }
    return diff / mass;
}

} // namespace subspec

#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "scsa/butterworth.hpp"
#include "scsa/diff_operators.hpp"
#include "scsa/errors.hpp"
#include "scsa/grid.hpp"
#include "scsa/noise_bounds.hpp"
#include "scsa/schrodinger.hpp"
#include "scsa/signal_ops.hpp"

namespace scsa {

namespace detail {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index writes
/// only its own slot, so the result is identical to sequential evaluation.
template <typename Fn>
void parallel_for_index(std::size_t n, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min(threads, n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

struct HSweepPoint {
    double h = 0.0;
    std::size_t n_h = 0;
    double raw_residual = 0.0;       // ||y_noisy - y_h||
    double filtered_residual = 0.0;  // ||f(y_noisy) - f(y_h)||
    std::optional<double> true_error;   // ||y_clean - y_h||, when clean given
    std::optional<double> noise_bound;  // a-posteriori bound, when B given
    bool failed = false;
    std::string error;
};

struct HSweepResult {
    Grid grid;
    std::vector<HSweepPoint> points;
};

struct SweepOptions {
    std::optional<double> bound_B;   // enables the noise_bound column
    std::optional<double> tol_neg;   // negative-eigenvalue gate override
    std::size_t threads = 0;         // 0 = hardware concurrency
};

/// Full SCSA per grid point: eigensolve, reconstruct, record every applicable
/// norm. Eigensolver failures mark their point and the sweep continues.
inline HSweepResult sweep(const SampledSignal& noisy, const D2Matrix& d2,
                          const std::vector<double>& h_grid, const ButterworthFilter& filter,
                          const std::optional<SampledSignal>& clean = std::nullopt,
                          const SweepOptions& options = {}) {
    if (h_grid.empty()) throw DomainError("sweep: empty h grid");
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        if (!(h_grid[i] > 0.0)) throw DomainError("sweep: h grid must be positive");
        if (i > 0 && !(h_grid[i] > h_grid[i - 1]))
            throw DomainError("sweep: h grid must be strictly increasing");
    }
    if (noisy.grid.M != d2.M) throw DomainError("sweep: signal grid does not match operator");
    if (clean) require_same_grid(noisy, *clean, "sweep");

    const SampledSignal filtered_noisy = filter_signal(filter, noisy);

    HSweepResult result;
    result.grid = noisy.grid;
    result.points.resize(h_grid.size());

    detail::parallel_for_index(h_grid.size(), options.threads, [&](std::size_t i) {
        HSweepPoint& pt = result.points[i];
        pt.h = h_grid[i];
        try {
            const auto a = assemble(pt.h, d2, noisy);
            const auto spec = negative_spectrum(a, options.tol_neg);
            const auto recon = reconstruct(spec);
            pt.n_h = spec.count();
            pt.raw_residual = l2_error(noisy, recon);
            pt.filtered_residual = l2_error(filtered_noisy, filter_signal(filter, recon));
            if (clean) pt.true_error = l2_error(*clean, recon);
            if (options.bound_B)
                pt.noise_bound = aposteriori_bound(spec, *options.bound_B, 0.0).bound_value;
        } catch (const std::exception& e) {
            pt.failed = true;
            pt.error = e.what();
        }
    });
    return result;
}

struct SelectionResult {
    double recommended_h = 0.0;
    std::vector<double> local_minima;  // h of interior strict local minima
    bool no_interior_minimum = false;
};

/// Picks h from the filtered-residual curve: interior strict local minima
/// (a flat run counts once, at its smallest h), recommended is the one with
/// the smallest residual, ties toward smaller h. Without any interior
/// minimum the global minimizer is returned with the flag set.
inline SelectionResult select_h(const HSweepResult& result) {
    std::vector<double> hs;
    std::vector<double> fr;
    for (const auto& pt : result.points) {
        if (pt.failed) continue;
        hs.push_back(pt.h);
        fr.push_back(pt.filtered_residual);
    }
    if (hs.empty()) throw DomainError("select_h: sweep contains no usable points");

    SelectionResult sel;
    const std::size_t n = hs.size();

    // Runs of equal values; an interior run strictly below both neighbors is
    // one local minimum at the run's smallest h.
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && fr[j + 1] == fr[i]) ++j;
        if (i > 0 && j + 1 < n && fr[i] < fr[i - 1] && fr[i] < fr[j + 1])
            sel.local_minima.push_back(hs[i]);
        i = j + 1;
    }

    if (!sel.local_minima.empty()) {
        double best_h = sel.local_minima.front();
        double best_v = std::numeric_limits<double>::infinity();
        for (double h : sel.local_minima) {
            for (std::size_t i = 0; i < n; ++i) {
                if (hs[i] == h && fr[i] < best_v) {
                    best_v = fr[i];
                    best_h = h;
                }
            }
        }
        sel.recommended_h = best_h;
        return sel;
    }

    sel.no_interior_minimum = true;
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (fr[i] < fr[best]) best = i;  // strict keeps ties at the smaller h
    sel.recommended_h = hs[best];
    return sel;
}

}  // namespace scsa

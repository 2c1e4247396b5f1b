// Acceptance suite: each test prints one PASS/FAIL line for its criterion.
// The reference-experiment runs (criteria 2, 3, 6) use the compat
// differentiation scheme, which matches existing SCSA implementations; the
// closed-form soliton and solver oracles (criteria 1, 7) use the spectral
// scheme.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <random>
#include <vector>

#include "scsa/scsa.hpp"

using namespace scsa;

namespace {

struct NormalizationTracker {
    std::mutex mu;
    double worst = 0.0;
    std::size_t vectors = 0;

    void track(const NegativeSpectrum& spec) {
        const auto res = spec.normalization_residuals();
        std::lock_guard<std::mutex> lock(mu);
        for (double r : res) worst = std::max(worst, r);
        vectors += res.size();
    }
};

NormalizationTracker g_norms;

Grid reference_grid() { return make_grid(0.0, 12.0, 1201); }

const SampledSignal& reference_clean() {
    static const SampledSignal s = sech2_signal(reference_grid(), 6.0);
    return s;
}

const D2Matrix& reference_d2_compat() {
    static const D2Matrix d2 = fourier_d2_compat(1201, reference_grid().dx);
    return d2;
}

std::vector<double> reference_h_grid() {
    std::vector<double> h;
    for (int i = 0; i < 19; ++i) h.push_back(0.2 + 0.1 * i);
    return h;
}

struct SeedSweep {
    std::uint64_t seed;
    HSweepResult result;
    double true_min_h;
    double recommended_h;
};

// Five pinned seeds on the 11 dB reference setup, shared by criteria 2 and 3.
const std::vector<SeedSweep>& reference_sweeps() {
    static const std::vector<SeedSweep> runs = [] {
        std::vector<SeedSweep> out;
        const auto filter = butterworth2(0.01);
        const auto h_grid = reference_h_grid();
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            NoiseModel model;
            model.seed = seed;
            const auto obs = add_noise(reference_clean(), model, 11.0);
            auto result = sweep(obs.noisy, reference_d2_compat(), h_grid, filter, reference_clean());
            double best = std::numeric_limits<double>::infinity();
            double best_h = 0.0;
            for (const auto& pt : result.points) {
                REQUIRE_FALSE(pt.failed);
                if (*pt.true_error < best) {
                    best = *pt.true_error;
                    best_h = pt.h;
                }
            }
            const auto sel = select_h(result);
            out.push_back({seed, std::move(result), best_h, sel.recommended_h});
        }
        return out;
    }();
    return runs;
}

std::mt19937_64& arng() {
    static std::mt19937_64 eng(777);
    return eng;
}

double auniform(double lo, double hi) {
    return lo + (hi - lo) * ((arng()() >> 11) * 0x1.0p-53);
}

}  // namespace

TEST_CASE("criterion 1: soliton exactness at h = 1/sqrt(2)", "[acceptance]") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = reference_grid();
    const auto clean = reference_clean();
    const auto d2 = fourier_d2(grid.M, grid.dx);
    const double h = 1.0 / std::numbers::sqrt2;

    const auto spec = negative_spectrum(assemble(h, d2, clean));
    g_norms.track(spec);
    const auto recon = reconstruct(spec);
    const double rel_err = l2_error(clean, recon) / l2_norm(clean);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool n_ok = spec.count() == 1;
    const double kappa_rel = n_ok ? std::abs(spec.kappas[0] - h) / h : 1.0;
    const bool pass = n_ok && kappa_rel <= 0.02 && rel_err <= 5e-2 && seconds <= 60.0;
    std::printf("ACCEPTANCE 1 soliton-exactness: %s (N_h=%zu, kappa rel err=%.3e, "
                "l2 rel err=%.3e, %.1f s)\n",
                pass ? "PASS" : "FAIL", spec.count(), kappa_rel, rel_err, seconds);
    REQUIRE(n_ok);
    REQUIRE(kappa_rel <= 0.02);
    REQUIRE(rel_err <= 5e-2);
    REQUIRE(seconds <= 60.0);
}

TEST_CASE("criterion 2: the h-sweep finds the reference optimum", "[acceptance]") {
    const auto& runs = reference_sweeps();
    int min_in_band = 0;
    int rec_near_min = 0;
    for (const auto& r : runs) {
        const bool in_band = r.true_min_h > 0.25 && r.true_min_h < 0.55;
        const bool near = std::abs(r.recommended_h - r.true_min_h) <= 0.1 + 1e-9;
        min_in_band += in_band;
        rec_near_min += near;
        std::printf("  seed %llu: true-error min at h=%.1f%s, recommended h=%.1f%s\n",
                    static_cast<unsigned long long>(r.seed), r.true_min_h,
                    in_band ? "" : " (outside {0.3,0.4,0.5})", r.recommended_h,
                    near ? "" : " (more than 0.1 away)");
    }
    const bool pass = min_in_band >= 3 && rec_near_min >= 3;
    std::printf("ACCEPTANCE 2 reference-optimum: %s (minimizer in {0.3,0.4,0.5}: %d/5, "
                "recommendation within 0.1: %d/5)\n",
                pass ? "PASS" : "FAIL", min_in_band, rec_near_min);
    REQUIRE(min_in_band >= 3);
    REQUIRE(rec_near_min >= 3);
}

TEST_CASE("criterion 3: N_h is non-increasing along the h grid", "[acceptance]") {
    const auto& runs = reference_sweeps();
    bool monotone = true;
    bool ends_drop = true;
    for (const auto& r : runs) {
        for (std::size_t i = 1; i < r.result.points.size(); ++i)
            if (r.result.points[i].n_h > r.result.points[i - 1].n_h) monotone = false;
        if (r.result.points.front().n_h <= r.result.points.back().n_h) ends_drop = false;
    }
    const bool pass = monotone && ends_drop;
    std::printf("ACCEPTANCE 3 nh-profile: %s (non-increasing=%s, N(0.2)>N(2.0)=%s, "
                "N(0.2)=%zu, N(2.0)=%zu on seed 1)\n",
                pass ? "PASS" : "FAIL", monotone ? "yes" : "no", ends_drop ? "yes" : "no",
                runs[0].result.points.front().n_h, runs[0].result.points.back().n_h);
    REQUIRE(monotone);
    REQUIRE(ends_drop);
}

TEST_CASE("criterion 4: exact count bounds on planted potentials", "[acceptance]") {
    int violations = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 5 + static_cast<std::size_t>(auniform(0.0, 45.0));
        const std::size_t n_zero = static_cast<std::size_t>(auniform(0.0, 0.999 * m));
        const double dx = auniform(0.2, 1.0);
        const Grid g = make_grid(0.0, dx * static_cast<double>(m - 1), m);
        std::vector<double> y(m);
        for (auto& v : y) v = auniform(0.1, 2.0);
        std::vector<std::size_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0UL);
        std::shuffle(idx.begin(), idx.end(), arng());
        for (std::size_t k = 0; k < n_zero; ++k) y[idx[k]] = 0.0;

        const SampledSignal pot(g, y);
        const auto d2 = central_fd_d2(m, dx);
        const auto th = count_thresholds(pot, extreme_spectrum(d2));
        const auto count_at = [&](double h) {
            const auto a = assemble(h, d2, pot);
            return negative_count(symmetric_eigen(a.entries),
                                  default_negative_tolerance(a.entries));
        };
        if (count_at(0.999 * th.h_all) != m - n_zero) ++violations;
        if (count_at(1.001 * th.h_none) != 0) ++violations;
        const double lo = std::log(0.5 * th.h_all);
        const double hi = std::log(2.0 * th.h_none);
        for (int k = 0; k < 7; ++k) {
            const double h = std::exp(lo + (hi - lo) * k / 6.0);
            const auto n = count_at(h);
            if (n > m - n_zero) ++violations;
        }
    }
    std::printf("ACCEPTANCE 4 count-bounds: %s (%d violations over 100 potentials)\n",
                violations == 0 ? "PASS" : "FAIL", violations);
    REQUIRE(violations == 0);
}

TEST_CASE("criterion 5: Weyl gap inequality per scheme", "[acceptance]") {
    int total_violations = 0;
    for (DiffScheme scheme : {DiffScheme::fourier_pseudospectral,
                              DiffScheme::fourier_pseudospectral_compat,
                              DiffScheme::central_fd_dirichlet}) {
        int accepted = 0;
        int attempts = 0;
        while (accepted < 100 && attempts < 2000) {
            ++attempts;
            const std::size_t m = 10 + static_cast<std::size_t>(auniform(0.0, 30.0));
            const double dx = 0.1;
            const Grid g = make_grid(0.0, dx * static_cast<double>(m - 1), m);
            std::vector<double> y(m);
            for (auto& v : y) v = auniform(0.5, 2.0);
            const SampledSignal pot(g, y);
            NoiseModel model;
            model.variance = 0.03 * 0.03;
            model.seed = 50000 + attempts;
            const auto obs = add_noise(pot, model);
            const auto d2 = make_d2(scheme, m, dx);
            const double h = 0.05;
            const auto cs = negative_spectrum(assemble(h, d2, pot));
            const auto ns = negative_spectrum(assemble(h, d2, obs.noisy));
            if (cs.count() != ns.count() || cs.count() == 0) continue;  // (C5) gate
            g_norms.track(cs);
            g_norms.track(ns);
            const auto rep = weyl_gap_check(cs, ns, obs.noise);
            total_violations += static_cast<int>(rep.violations.size());
            ++accepted;
        }
        REQUIRE(accepted == 100);
    }
    std::printf("ACCEPTANCE 5 weyl-inequality: %s (%d violations over 300 pairs)\n",
                total_violations == 0 ? "PASS" : "FAIL", total_violations);
    REQUIRE(total_violations == 0);
}

TEST_CASE("criterion 6: a-posteriori bound coverage at h = 0.4", "[acceptance]") {
    // The bound assumes (C5), so the Monte Carlo runs over draws where it
    // holds (the bound is reported as not applicable otherwise); draws are
    // consumed in seed order until 200 qualify.
    const double h = 0.4;
    const auto clean_spec = negative_spectrum(assemble(h, reference_d2_compat(), reference_clean()));
    g_norms.track(clean_spec);
    const auto clean_recon = reconstruct(clean_spec);

    const int wanted = 200;
    const int batch = 240;
    std::vector<int> status(batch, -1);  // -1 = (C5) violated, else covered flag
    detail::parallel_for_index(batch, 0, [&](std::size_t t) {
        NoiseModel model;
        model.seed = 1000 + t;  // per-trial derived seed
        const auto obs = add_noise(reference_clean(), model, 11.0);
        double p = 0.0;
        for (double v : obs.noise.values) p += v * v;
        const double sigma = std::sqrt(p / static_cast<double>(obs.noise.size()));
        const auto noisy_spec = negative_spectrum(assemble(h, reference_d2_compat(), obs.noisy));
        g_norms.track(noisy_spec);
        if (noisy_spec.count() != clean_spec.count()) return;  // bound not applicable
        const auto bound = aposteriori_bound(noisy_spec, three_sigma_bound(sigma).B, 0.997);
        const double err = l2_error(reconstruct(noisy_spec), clean_recon);
        status[t] = err <= bound.bound_value;
    });
    int applicable = 0;
    int n_cov = 0;
    int consumed = 0;
    for (int t = 0; t < batch && applicable < wanted; ++t) {
        ++consumed;
        if (status[t] < 0) continue;
        ++applicable;
        n_cov += status[t];
    }
    const bool pass = applicable == wanted && n_cov >= 198;
    std::printf("ACCEPTANCE 6 bound-coverage: %s (%d/%d qualifying draws covered; "
                "(C5) held in %d of %d raw draws)\n",
                pass ? "PASS" : "FAIL", n_cov, applicable, applicable, consumed);
    REQUIRE(applicable == wanted);
    REQUIRE(n_cov >= 198);
}

TEST_CASE("criterion 7: eigensolver oracle", "[acceptance]") {
    bool fd_ok = true;
    for (std::size_t m : {3UL, 50UL, 512UL}) {
        const double dx = 0.3;
        const auto d2 = central_fd_d2(m, dx);
        DenseMatrix neg(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) neg(i, j) = -d2(i, j);
        const auto dec = symmetric_eigen(neg);
        const auto exact = central_fd_neg_d2_eigenvalues(m, dx);
        for (std::size_t k = 0; k < m; ++k)
            if (std::abs(dec.eigenvalues[k] - exact[k]) > 1e-8 * exact[k]) fd_ok = false;
    }

    bool invariants_ok = true;
    for (std::size_t n : {5UL, 20UL, 100UL}) {
        for (int rep = 0; rep < 10; ++rep) {
            DenseMatrix a(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = auniform(-1.0, 1.0);
            const auto dec = symmetric_eigen(a);
            const double fro = frobenius_norm(a);
            for (std::size_t k = 0; k < n; ++k) {
                const auto v = dec.eigenvector(k);
                const auto av = matvec(a, v);
                double resid = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = av[i] - dec.eigenvalues[k] * v[i];
                    resid += r * r;
                }
                if (std::sqrt(resid) > 1e-10 * static_cast<double>(n) * fro)
                    invariants_ok = false;
            }
            for (std::size_t i = 0; i < n && invariants_ok; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    double dot = 0.0;
                    for (std::size_t k = 0; k < n; ++k)
                        dot += dec.vectors(i, k) * dec.vectors(j, k);
                    if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-10 * static_cast<double>(n))
                        invariants_ok = false;
                }
        }
    }
    const bool pass = fd_ok && invariants_ok;
    std::printf("ACCEPTANCE 7 eigensolver-oracle: %s (analytic FD=%s, invariants=%s)\n",
                pass ? "PASS" : "FAIL", fd_ok ? "ok" : "failed",
                invariants_ok ? "ok" : "failed");
    REQUIRE(fd_ok);
    REQUIRE(invariants_ok);
}

TEST_CASE("criterion 8: eigenvector normalization across all runs", "[acceptance]") {
    // Runs after the spectra-producing criteria (Catch2 keeps declaration order).
    std::lock_guard<std::mutex> lock(g_norms.mu);
    const bool pass = g_norms.vectors > 0 && g_norms.worst <= 1e-10;
    std::printf("ACCEPTANCE 8 normalization: %s (worst |dx*sum psi^2 - 1| = %.3e over %zu "
                "eigenvectors)\n",
                pass ? "PASS" : "FAIL", g_norms.worst, g_norms.vectors);
    REQUIRE(g_norms.vectors > 0);
    REQUIRE(g_norms.worst <= 1e-10);
}

TEST_CASE("criterion 9: filter contract at wc = 0.01", "[acceptance]") {
    const auto f = butterworth2(0.01);
    const double dc = std::abs(dc_gain(f) - 1.0);
    const double nyq = gain_at(f, std::numbers::pi);
    const auto [p1, p2] = poles(f);
    const bool stable = std::abs(p1) < 1.0 && std::abs(p2) < 1.0;

    const Grid g = make_grid(0.0, 12.0, 1201);
    GaussianSampler gen(31);
    std::vector<double> v(g.M);
    for (auto& x : v) x = gen.next();
    const SampledSignal s(g, v);
    const double resid = l2_error(filter_signal(f, s), filter_signal(f, s));

    const bool pass = dc <= 1e-10 && nyq <= 1e-10 && stable && resid == 0.0;
    std::printf("ACCEPTANCE 9 filter-contract: %s (|dc-1|=%.2e, nyquist=%.2e, stable=%s, "
                "equal-input residual=%g)\n",
                pass ? "PASS" : "FAIL", dc, nyq, stable ? "yes" : "no", resid);
    REQUIRE(dc <= 1e-10);
    REQUIRE(nyq <= 1e-10);
    REQUIRE(stable);
    REQUIRE(resid == 0.0);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "scsa/errors.hpp"
#include "scsa/grid.hpp"
#include "scsa/schrodinger.hpp"

namespace scsa {

/// Two-sided amplitude bound from the Bienayme-Chebyshev inequality:
/// |w| < B with probability above p = 1 - 1/gamma^2 for a variable with
/// mean mu and standard deviation sigma.
struct ChebyshevBound {
    double gamma = 0.0;
    double p = 0.0;
    double B = 0.0;
};

inline ChebyshevBound chebyshev_bound(double mu, double sigma, double gamma) {
    if (sigma < 0.0) throw DomainError("chebyshev_bound: sigma must be nonnegative");
    if (!(gamma > 0.0)) throw DomainError("chebyshev_bound: gamma must be positive");
    ChebyshevBound out;
    out.gamma = gamma;
    out.p = 1.0 - 1.0 / (gamma * gamma);  // may be <= 0 for gamma <= 1; vacuous but valid
    out.B = std::max(std::abs(mu - gamma * sigma), std::abs(mu + gamma * sigma));
    return out;
}

/// Gaussian specialization at gamma = 3: B = 3 sigma with probability label
/// 0.997 replacing the generic Chebyshev 8/9.
inline ChebyshevBound three_sigma_bound(double sigma) {
    if (sigma < 0.0) throw DomainError("three_sigma_bound: sigma must be nonnegative");
    return {3.0, 0.997, 3.0 * sigma};
}

/// Lemma-style per-mode gap bound B / (sqrt(2) kappa).
inline double kappa_gap_bound(double noisy_kappa, double B) {
    if (!(noisy_kappa > 0.0))
        throw DomainError("kappa_gap_bound: kappa must be positive");
    if (B < 0.0) throw DomainError("kappa_gap_bound: B must be nonnegative");
    return B / (std::numbers::sqrt2 * noisy_kappa);
}

/// Deterministic Weyl check: for rank-matched modes of the clean and noisy
/// spectra, |kappa~^2 - kappa^^2| <= max_j |w_j|. Violations (there must be
/// none, up to rounding slack) are reported by mode index.
struct WeylGapReport {
    std::vector<double> gaps;         // |kappa~_n^2 - kappa^_n^2|
    double noise_bound = 0.0;         // max_j |w_j|
    double slack = 0.0;               // rounding allowance used by the check
    std::vector<std::size_t> violations;

    bool ok() const { return violations.empty(); }
};

inline WeylGapReport weyl_gap_check(const NegativeSpectrum& clean,
                                    const NegativeSpectrum& noisy,
                                    const SampledSignal& noise) {
    if (!(clean.grid == noisy.grid) || !(clean.grid == noise.grid))
        throw DomainError("weyl_gap_check: spectra and noise live on different grids");
    if (clean.h != noisy.h)
        throw DomainError("weyl_gap_check: spectra were computed at different h");
    if (clean.count() != noisy.count())
        throw ConditionError("weyl_gap_check: (C5) violated, N_h differs between clean (" +
                             std::to_string(clean.count()) + ") and noisy (" +
                             std::to_string(noisy.count()) + ") spectra");

    WeylGapReport out;
    double wmax = 0.0;
    for (double w : noise.values) wmax = std::max(wmax, std::abs(w));
    out.noise_bound = wmax;

    double scale = wmax;
    for (std::size_t n = 0; n < clean.count(); ++n)
        scale = std::max({scale, clean.kappas[n] * clean.kappas[n],
                          noisy.kappas[n] * noisy.kappas[n]});
    out.slack = 1e3 * std::numeric_limits<double>::epsilon() * scale;

    out.gaps.resize(clean.count());
    for (std::size_t n = 0; n < clean.count(); ++n) {
        const double gap = std::abs(noisy.kappas[n] * noisy.kappas[n] -
                                    clean.kappas[n] * clean.kappas[n]);
        out.gaps[n] = gap;
        if (gap > wmax + out.slack) out.violations.push_back(n);
    }
    return out;
}

/// Modes where the Lemma precondition (C6) kappa~^2 < 2 kappa^^2 fails.
inline std::vector<std::size_t> c6_violations(const NegativeSpectrum& clean,
                                              const NegativeSpectrum& noisy) {
    if (clean.count() != noisy.count())
        throw ConditionError("c6_violations: (C5) violated, spectra have different mode counts");
    std::vector<std::size_t> bad;
    for (std::size_t n = 0; n < clean.count(); ++n) {
        const double kt2 = noisy.kappas[n] * noisy.kappas[n];
        const double kh2 = clean.kappas[n] * clean.kappas[n];
        if (!(kt2 < 2.0 * kh2)) bad.push_back(n);
    }
    return bad;
}

/// A-posteriori bound on the noise contribution to the reconstruction:
/// ||y~_h - y^_h||_2 < (4h/sqrt(dx)) sum_n (2 kappa~_n + B/(sqrt(2) kappa~_n))
/// with probability floor p.
struct NoiseErrorBound {
    double h = 0.0;
    double dx = 0.0;
    double bound_value = 0.0;
    std::vector<double> per_mode_terms;
    double probability_floor = 0.0;
};

inline NoiseErrorBound aposteriori_bound(const NegativeSpectrum& noisy, double B, double p) {
    if (B < 0.0) throw DomainError("aposteriori_bound: B must be nonnegative");
    NoiseErrorBound out;
    out.h = noisy.h;
    out.dx = noisy.dx();
    out.probability_floor = p;
    out.per_mode_terms.resize(noisy.count());
    double sum = 0.0;
    for (std::size_t n = 0; n < noisy.count(); ++n) {
        const double kappa = noisy.kappas[n];
        if (!(kappa > 0.0))
            throw NumericError("aposteriori_bound: spectrum contains a non-positive kappa");
        out.per_mode_terms[n] = 2.0 * kappa + B / (std::numbers::sqrt2 * kappa);
        sum += out.per_mode_terms[n];
    }
    out.bound_value = 4.0 * out.h / std::sqrt(out.dx) * sum;
    return out;
}

enum class C5Status { satisfied, violated, unknown };

/// Everything a bound run reports; serialized to JSON by the io layer.
struct BoundReport {
    double h = 0.0;
    std::size_t n_h = 0;
    double B = 0.0;
    double gamma = 0.0;
    double p = 0.0;
    double bound_value = 0.0;
    std::vector<double> per_mode_terms;
    std::optional<double> empirical_error;
    C5Status c5 = C5Status::unknown;
    std::vector<std::size_t> c6_violation_modes;
};

}  // namespace scsa

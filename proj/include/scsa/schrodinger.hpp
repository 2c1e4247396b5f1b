#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scsa/dense_matrix.hpp"
#include "scsa/diff_operators.hpp"
#include "scsa/eigen_solver.hpp"
#include "scsa/errors.hpp"
#include "scsa/grid.hpp"

namespace scsa {

/// A_h = -h^2 D2 - diag(Y), the discretized Schrodinger operator with the
/// signal Y as (minus) the potential.
struct SchrodingerMatrix {
    double h = 0.0;
    DiffScheme scheme = DiffScheme::central_fd_dirichlet;
    Grid grid;
    std::vector<double> potential;
    DenseMatrix entries;
};

inline SchrodingerMatrix assemble(double h, const D2Matrix& d2, const SampledSignal& potential) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw DomainError("assemble: semi-classical parameter must be positive");
    if (potential.grid.M != d2.M)
        throw DomainError("assemble: potential grid does not match operator size");
    require_finite(potential, "assemble");

    const std::size_t m = d2.M;
    const double h2 = h * h;
    SchrodingerMatrix out;
    out.h = h;
    out.scheme = d2.scheme;
    out.grid = potential.grid;
    out.potential = potential.values;
    out.entries = DenseMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto src = d2.entries.row(i);
        auto dst = out.entries.row(i);
        for (std::size_t j = 0; j < m; ++j) dst[j] = -h2 * src[j];
        dst[i] -= potential.values[i];
    }
    return out;
}

/// The kappa_n = sqrt(-lambda_n) values and renormalized eigenvectors of one
/// assembled matrix. kappas are descending; eigenvector rows satisfy
/// dx * sum psi^2 = 1 (each solver vector has unit 2-norm and is scaled by
/// 1/sqrt(dx)).
struct NegativeSpectrum {
    double h = 0.0;
    Grid grid;
    std::vector<double> kappas;
    DenseMatrix eigenvectors;  // row n = psi_n, length M

    std::size_t count() const { return kappas.size(); }
    double dx() const { return grid.dx; }

    /// |dx * sum psi_n^2 - 1| per mode.
    std::vector<double> normalization_residuals() const {
        std::vector<double> r(kappas.size());
        for (std::size_t n = 0; n < kappas.size(); ++n) {
            double s = 0.0;
            for (double v : eigenvectors.row(n)) s += v * v;
            r[n] = std::abs(grid.dx * s - 1.0);
        }
        return r;
    }
};

/// Extracts eigenvalues below -tol_neg (default 1e3*eps*||A||_inf) and
/// renormalizes their eigenvectors for the reconstruction formula.
inline NegativeSpectrum negative_spectrum(const SchrodingerMatrix& a,
                                          std::optional<double> tol_neg = std::nullopt) {
    const double tol = tol_neg.value_or(default_negative_tolerance(a.entries));
    if (tol < 0.0) throw DomainError("negative_spectrum: tolerance must be nonnegative");

    const auto dec = symmetric_eigen(a.entries);
    const std::size_t m = a.grid.M;
    std::size_t n_neg = 0;
    while (n_neg < m && dec.eigenvalues[n_neg] < -tol) ++n_neg;

    NegativeSpectrum out;
    out.h = a.h;
    out.grid = a.grid;
    out.kappas.resize(n_neg);
    out.eigenvectors = DenseMatrix(n_neg, m);
    const double rescale = 1.0 / std::sqrt(a.grid.dx);
    // Ascending eigenvalues: index 0 is the most negative, so kappas come out
    // descending, matching kappa_1 >= kappa_2 >= ... > 0.
    for (std::size_t n = 0; n < n_neg; ++n) {
        out.kappas[n] = std::sqrt(std::max(-dec.eigenvalues[n], 0.0));
        const auto src = dec.eigenvector(n);
        auto dst = out.eigenvectors.row(n);
        for (std::size_t j = 0; j < m; ++j) dst[j] = rescale * src[j];
    }
    return out;
}

/// y_h(x_j) = 4 h sum_n kappa_n psi_n(x_j)^2. Empty spectrum gives the zero
/// signal.
inline SampledSignal reconstruct(const NegativeSpectrum& spec) {
    std::vector<double> v(spec.grid.M, 0.0);
    for (std::size_t n = 0; n < spec.count(); ++n) {
        const double w = 4.0 * spec.h * spec.kappas[n];
        const auto psi = spec.eigenvectors.row(n);
        for (std::size_t j = 0; j < spec.grid.M; ++j) v[j] += w * psi[j] * psi[j];
    }
    return SampledSignal(spec.grid, std::move(v));
}

/// Eigenvalue-count thresholds: below h_all every admissible mode is a bound
/// state (N_h = M - n_zero); above h_none there are none. h_none is +inf when
/// -D2 is only semidefinite (dM below its tolerance) or the potential has no
/// positive part.
struct BoundThresholds {
    std::size_t n_zero = 0;      // diagonal entries <= tol_zero
    double y_min_pos = 0.0;      // smallest entry above tol_zero (if any)
    double y_max = 0.0;          // largest entry
    double h_all = 0.0;          // sqrt(y_min_pos / d1); undefined if no positive entry
    double h_none = 0.0;         // sqrt(y_max / dM), +inf in the semidefinite regime
    bool h_all_defined = false;
};

inline BoundThresholds count_thresholds(const SampledSignal& potential,
                                        const OperatorSpectrum& spectrum,
                                        double tol_zero = 0.0) {
    if (!(spectrum.d1 > 0.0))
        throw DomainError("count_thresholds: d1 must be positive");
    if (tol_zero < 0.0)
        throw DomainError("count_thresholds: tol_zero must be nonnegative");

    BoundThresholds out;
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();
    for (double y : potential.values) {
        ymax = std::max(ymax, y);
        if (y <= tol_zero) {
            ++out.n_zero;
        } else {
            ymin = std::min(ymin, y);
        }
    }
    out.y_max = ymax;
    if (out.n_zero < potential.size()) {
        out.y_min_pos = ymin;
        out.h_all = std::sqrt(ymin / spectrum.d1);
        out.h_all_defined = true;
    }
    if (spectrum.dM <= spectrum.psd_tol || ymax <= tol_zero)
        out.h_none = std::numeric_limits<double>::infinity();
    else
        out.h_none = std::sqrt(ymax / spectrum.dM);
    return out;
}

struct NhPoint {
    double h = 0.0;
    std::size_t n_h = 0;
};

/// N_h along an increasing h grid, one full eigensolve per point.
inline std::vector<NhPoint> nh_profile(const SampledSignal& potential, const D2Matrix& d2,
                                       const std::vector<double>& h_grid,
                                       std::optional<double> tol_neg = std::nullopt) {
    if (h_grid.empty()) throw DomainError("nh_profile: empty h grid");
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        if (!(h_grid[i] > 0.0))
            throw DomainError("nh_profile: h grid must be positive");
        if (i > 0 && !(h_grid[i] > h_grid[i - 1]))
            throw DomainError("nh_profile: h grid must be strictly increasing");
    }
    std::vector<NhPoint> out;
    out.reserve(h_grid.size());
    for (double h : h_grid) {
        const auto a = assemble(h, d2, potential);
        const double tol = tol_neg.value_or(default_negative_tolerance(a.entries));
        const auto dec = symmetric_eigen(a.entries);
        out.push_back({h, negative_count(dec, tol)});
    }
    return out;
}

}  // namespace scsa

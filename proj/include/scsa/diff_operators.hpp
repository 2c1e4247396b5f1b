#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "scsa/dense_matrix.hpp"
#include "scsa/eigen_solver.hpp"
#include "scsa/errors.hpp"

namespace scsa {

/// Second-derivative discretizations.
///
/// fourier_pseudospectral: periodic spectral matrix for M points with spacing
/// dx (implied period M*dx). Differentiates resolved trigonometric modes to
/// rounding accuracy; annihilates constants, so -D2 is positive semidefinite.
///
/// fourier_pseudospectral_compat: same off-diagonals, but for odd M the
/// diagonal is -pi^2/(3 Delta^2) - 1/12 instead of + 1/12. This matches the
/// matrix used by existing SCSA implementations and equals the spectral
/// operator minus (2*pi/(M*dx))^2/6 times the identity; for even M the two
/// schemes coincide. Kept so published SCSA results can be reproduced
/// bit-for-bit.
///
/// central_fd_dirichlet: tridiagonal [1 -2 1]/dx^2 with homogeneous Dirichlet
/// ends; -D2 is positive definite with a closed-form spectrum.
enum class DiffScheme {
    fourier_pseudospectral,
    fourier_pseudospectral_compat,
    central_fd_dirichlet,
};

inline const char* scheme_name(DiffScheme s) {
    switch (s) {
        case DiffScheme::fourier_pseudospectral: return "fourier";
        case DiffScheme::fourier_pseudospectral_compat: return "fourier-compat";
        case DiffScheme::central_fd_dirichlet: return "fd";
    }
    return "?";
}

inline constexpr std::size_t kDefaultDenseCap = 4096;

struct D2Matrix {
    DiffScheme scheme = DiffScheme::central_fd_dirichlet;
    std::size_t M = 0;
    double dx = 1.0;
    DenseMatrix entries;

    double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

/// Extreme eigenvalues of -D2 (note the sign: both are nonnegative up to
/// rounding for the schemes above). psd_tol is the semidefiniteness gate
/// used when deciding whether 1/dM-type thresholds are meaningful.
struct OperatorSpectrum {
    double d1 = 0.0;  // largest eigenvalue of -D2
    double dM = 0.0;  // smallest eigenvalue of -D2
    double psd_tol = 0.0;
};

namespace detail {

inline void check_d2_args(std::size_t m, double dx, std::size_t cap, const char* where) {
    if (m < 2) throw DomainError(std::string(where) + ": need M >= 2");
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw DomainError(std::string(where) + ": need dx > 0");
    if (m > cap)
        throw DomainError(std::string(where) + ": M = " + std::to_string(m) +
                          " exceeds the dense cap " + std::to_string(cap));
}

// Entries depend on k - j only and are even in it, so the matrix is an exactly
// symmetric Toeplitz fill of a single stencil.
inline DenseMatrix toeplitz_fill(const std::vector<double>& stencil) {
    const std::size_t m = stencil.size();
    DenseMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a(i, j) = stencil[i > j ? i - j : j - i];
    return a;
}

inline std::vector<double> fourier_stencil(std::size_t m, double dx, bool compat) {
    const double delta = 2.0 * std::numbers::pi / static_cast<double>(m);
    const double scale = (delta / dx) * (delta / dx);
    const double pi2_3d2 = std::numbers::pi * std::numbers::pi / (3.0 * delta * delta);
    std::vector<double> stencil(m);
    if (m % 2 == 0) {
        stencil[0] = scale * (-pi2_3d2 - 1.0 / 6.0);
        for (std::size_t k = 1; k < m; ++k) {
            const double s = std::sin(0.5 * static_cast<double>(k) * delta);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            stencil[k] = scale * (-sign * 0.5 / (s * s));
        }
    } else {
        stencil[0] = scale * (-pi2_3d2 + (compat ? -1.0 : 1.0) / 12.0);
        for (std::size_t k = 1; k < m; ++k) {
            const double ang = 0.5 * static_cast<double>(k) * delta;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            stencil[k] = scale * (-sign * 0.5 / (std::tan(ang) * std::sin(ang)));
        }
    }
    return stencil;
}

}  // namespace detail

/// Periodic Fourier pseudo-spectral second-derivative matrix.
inline D2Matrix fourier_d2(std::size_t m, double dx, std::size_t dense_cap = kDefaultDenseCap) {
    detail::check_d2_args(m, dx, dense_cap, "fourier_d2");
    return {DiffScheme::fourier_pseudospectral, m, dx,
            detail::toeplitz_fill(detail::fourier_stencil(m, dx, false))};
}

/// Compatibility variant (see DiffScheme).
inline D2Matrix fourier_d2_compat(std::size_t m, double dx,
                                  std::size_t dense_cap = kDefaultDenseCap) {
    detail::check_d2_args(m, dx, dense_cap, "fourier_d2_compat");
    return {DiffScheme::fourier_pseudospectral_compat, m, dx,
            detail::toeplitz_fill(detail::fourier_stencil(m, dx, true))};
}

/// Central second-difference matrix with homogeneous Dirichlet ends.
inline D2Matrix central_fd_d2(std::size_t m, double dx,
                              std::size_t dense_cap = kDefaultDenseCap) {
    detail::check_d2_args(m, dx, dense_cap, "central_fd_d2");
    DenseMatrix a(m, m, 0.0);
    const double inv = 1.0 / (dx * dx);
    for (std::size_t i = 0; i < m; ++i) {
        a(i, i) = -2.0 * inv;
        if (i + 1 < m) {
            a(i, i + 1) = inv;
            a(i + 1, i) = inv;
        }
    }
    return {DiffScheme::central_fd_dirichlet, m, dx, std::move(a)};
}

inline D2Matrix make_d2(DiffScheme scheme, std::size_t m, double dx,
                        std::size_t dense_cap = kDefaultDenseCap) {
    switch (scheme) {
        case DiffScheme::fourier_pseudospectral: return fourier_d2(m, dx, dense_cap);
        case DiffScheme::fourier_pseudospectral_compat: return fourier_d2_compat(m, dx, dense_cap);
        case DiffScheme::central_fd_dirichlet: return central_fd_d2(m, dx, dense_cap);
    }
    throw DomainError("make_d2: unknown scheme");
}

/// Closed-form eigenvalues of -D2 for the Dirichlet FD scheme, ascending:
/// (4/dx^2) sin^2(k pi / (2(M+1))), k = 1..M.
inline std::vector<double> central_fd_neg_d2_eigenvalues(std::size_t m, double dx) {
    std::vector<double> lam(m);
    for (std::size_t k = 1; k <= m; ++k) {
        const double s = std::sin(static_cast<double>(k) * std::numbers::pi /
                                  (2.0 * static_cast<double>(m + 1)));
        lam[k - 1] = 4.0 / (dx * dx) * s * s;
    }
    return lam;
}

/// Semidefiniteness tolerance for -D2: 1e3 * eps * ||D2||_inf.
inline double psd_tolerance(const D2Matrix& d2) {
    return 1e3 * std::numeric_limits<double>::epsilon() * norm_inf(d2.entries);
}

/// Largest/smallest eigenvalue of -D2. The FD scheme uses its closed form;
/// the Fourier schemes go through the dense eigensolver.
inline OperatorSpectrum extreme_spectrum(const D2Matrix& d2) {
    OperatorSpectrum out;
    out.psd_tol = psd_tolerance(d2);
    if (d2.scheme == DiffScheme::central_fd_dirichlet) {
        const auto lam = central_fd_neg_d2_eigenvalues(d2.M, d2.dx);
        out.dM = lam.front();
        out.d1 = lam.back();
        return out;
    }
    DenseMatrix neg(d2.M, d2.M);
    for (std::size_t i = 0; i < d2.M; ++i)
        for (std::size_t j = 0; j < d2.M; ++j) neg(i, j) = -d2.entries(i, j);
    const auto dec = symmetric_eigen(neg);
    out.dM = dec.eigenvalues.front();
    out.d1 = dec.eigenvalues.back();
    return out;
}

}  // namespace scsa

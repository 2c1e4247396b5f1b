#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "scsa/dense_matrix.hpp"
#include "scsa/errors.hpp"

namespace scsa {

/// Full spectrum of a dense symmetric matrix: eigenvalues ascending, one
/// orthonormal eigenvector per eigenvalue. Eigenvectors are stored as rows
/// so the QL rotations and all downstream per-mode work touch contiguous
/// memory; eigenvector(k) pairs with eigenvalues[k].
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix vectors;  // row k = eigenvector k

    std::span<const double> eigenvector(std::size_t k) const { return vectors.row(k); }
    std::size_t size() const { return eigenvalues.size(); }
};

namespace detail {

// Householder reduction of a symmetric matrix to tridiagonal form
// (EISPACK tred2). On exit a holds the accumulated orthogonal transform Q
// (columns), d the diagonal and e the subdiagonal with e[0] = 0.
inline void householder_tridiagonalize(DenseMatrix& a, std::vector<double>& d,
                                       std::vector<double>& e) {
    const std::size_t n = a.rows();
    d.assign(n, 0.0);
    e.assign(n, 0.0);

    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    a(j, i) = a(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = a(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (std::size_t k = 0; k <= j; ++k)
                        a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (std::size_t j = 0; j < i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k < i; ++k) g += a(i, k) * a(k, j);
                for (std::size_t k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
            }
        }
        d[i] = a(i, i);
        a(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j) = 0.0;
    }
}

inline constexpr int kQlMaxSweeps = 50;

// Implicit-shift QL iteration on a tridiagonal matrix (EISPACK tql2).
// d = diagonal, e = subdiagonal with e[0] unused; zt rows accumulate the
// rotations, so on exit row k of zt is the eigenvector of d[k]. Eigenvalues
// are left unsorted.
inline void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e,
                              DenseMatrix& zt) {
    const std::size_t n = d.size();
    if (n == 0) return;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kQlMaxSweeps)
                    throw NumericError(
                        "symmetric_eigen: QL iteration did not converge for eigenvalue index " +
                        std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;

                    double* zi = zt.row(i).data();
                    double* zj = zt.row(i + 1).data();
                    for (std::size_t k = 0; k < n; ++k) {
                        f = zj[k];
                        zj[k] = s * zi[k] + c * f;
                        zi[k] = c * zi[k] - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Sort eigenpairs ascending (stable) and fix each eigenvector's sign so its
// largest-magnitude component is positive.
inline EigenDecomposition order_and_normalize(std::vector<double>& d, DenseMatrix& zt) {
    const std::size_t n = d.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = d[perm[k]];
        auto src = zt.row(perm[k]);
        auto dst = out.vectors.row(k);
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double av = std::abs(src[j]);
            if (av > amax) {
                amax = av;
                imax = j;
            }
        }
        const double sign = (src[imax] < 0.0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) dst[j] = sign * src[j];
    }
    return out;
}

}  // namespace detail

/// Symmetry gate for symmetric_eigen: entries must match their transpose
/// within 1e6 * eps * max|A|.
inline double symmetry_tolerance(const DenseMatrix& a) {
    return 1e6 * std::numeric_limits<double>::epsilon() * max_abs(a);
}

/// Full eigendecomposition of a dense symmetric matrix via Householder
/// tridiagonalization and implicit-shift QL. Deterministic: identical input
/// bits give identical output bits.
inline EigenDecomposition symmetric_eigen(const DenseMatrix& a) {
    if (a.rows() != a.cols())
        throw DomainError("symmetric_eigen: matrix is not square");
    const std::size_t n = a.rows();
    if (n == 0) throw DomainError("symmetric_eigen: empty matrix");
    for (double v : a.data())
        if (!std::isfinite(v))
            throw DomainError("symmetric_eigen: non-finite entry");
    if (max_asymmetry(a) > symmetry_tolerance(a))
        throw DomainError("symmetric_eigen: matrix is not symmetric within tolerance");

    DenseMatrix work = a;
    std::vector<double> d;
    std::vector<double> e;
    detail::householder_tridiagonalize(work, d, e);
    // Rows of the accumulation matrix must be the columns of Q.
    DenseMatrix zt = transposed(work);
    detail::ql_implicit_shift(d, e, zt);
    return detail::order_and_normalize(d, zt);
}

/// Eigendecomposition of a symmetric tridiagonal matrix given its diagonal
/// and subdiagonal (size M and M-1). Used by the finite-difference scheme.
inline EigenDecomposition symmetric_tridiagonal_eigen(std::vector<double> diag,
                                                      const std::vector<double>& off) {
    const std::size_t n = diag.size();
    if (n == 0) throw DomainError("symmetric_tridiagonal_eigen: empty matrix");
    if (off.size() + 1 != n)
        throw DomainError("symmetric_tridiagonal_eigen: subdiagonal size must be M-1");
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) e[i] = off[i - 1];
    DenseMatrix zt(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) zt(i, i) = 1.0;
    detail::ql_implicit_shift(diag, e, zt);
    return detail::order_and_normalize(diag, zt);
}

/// Number of eigenvalues strictly below -tol_neg.
inline std::size_t negative_count(const EigenDecomposition& decomp, double tol_neg) {
    if (tol_neg < 0.0) throw DomainError("negative_count: tolerance must be nonnegative");
    std::size_t c = 0;
    for (double lam : decomp.eigenvalues)
        if (lam < -tol_neg) ++c;
    return c;
}

/// Default negative-eigenvalue gate: 1e3 * eps * ||A||_inf. Scales with the
/// matrix so rounding-level negatives are not counted as bound states.
inline double default_negative_tolerance(const DenseMatrix& a) {
    return 1e3 * std::numeric_limits<double>::epsilon() * norm_inf(a);
}

}  // namespace scsa

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "scsa/errors.hpp"
#include "scsa/grid.hpp"

namespace scsa {

/// Discrete biquad obtained from the analog prototype
/// H(s) = wc^2 / (s^2 + 2 wc s + wc^2) by the bilinear transform with unit
/// sample period and no prewarping; wc is in radians per sample. The poles
/// are a real double pole at (2 - wc)/(2 + wc), so the filter is stable for
/// every admissible wc, and the DC gain is exactly one.
struct ButterworthFilter {
    double wc = 0.0;
    double b[3] = {0.0, 0.0, 0.0};
    double a[3] = {1.0, 0.0, 0.0};  // a[0] normalized to 1
};

inline ButterworthFilter butterworth2(double wc) {
    if (!(wc > 0.0) || !(wc < std::numbers::pi))
        throw DomainError("butterworth2: cutoff must lie in (0, pi) radians per sample");
    const double k = 2.0;  // bilinear 2/T with T = 1
    const double a0 = (k + wc) * (k + wc);
    ButterworthFilter f;
    f.wc = wc;
    f.b[0] = wc * wc / a0;
    f.b[1] = 2.0 * f.b[0];
    f.b[2] = f.b[0];
    f.a[0] = 1.0;
    f.a[1] = 2.0 * (wc * wc - k * k) / a0;
    f.a[2] = (k - wc) * (k - wc) / a0;
    return f;
}

inline double dc_gain(const ButterworthFilter& f) {
    return (f.b[0] + f.b[1] + f.b[2]) / (f.a[0] + f.a[1] + f.a[2]);
}

/// |H(e^{i omega})| at omega radians per sample.
inline double gain_at(const ButterworthFilter& f, double omega) {
    const std::complex<double> zinv = std::exp(std::complex<double>(0.0, -omega));
    const auto num = f.b[0] + zinv * (f.b[1] + zinv * f.b[2]);
    const auto den = f.a[0] + zinv * (f.a[1] + zinv * f.a[2]);
    return std::abs(num / den);
}

inline std::pair<std::complex<double>, std::complex<double>> poles(const ButterworthFilter& f) {
    const std::complex<double> disc =
        std::sqrt(std::complex<double>(f.a[1] * f.a[1] - 4.0 * f.a[2], 0.0));
    return {0.5 * (-f.a[1] + disc), 0.5 * (-f.a[1] - disc)};
}

/// Causal direct-form application with zero initial state; output length M.
inline std::vector<double> filter_values(const ButterworthFilter& f,
                                         const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double yn = f.b[0] * x[n] + f.b[1] * x1 + f.b[2] * x2 - f.a[1] * y1 - f.a[2] * y2;
        x2 = x1;
        x1 = x[n];
        y2 = y1;
        y1 = yn;
        y[n] = yn;
    }
    return y;
}

inline SampledSignal filter_signal(const ButterworthFilter& f, const SampledSignal& s) {
    return SampledSignal(s.grid, filter_values(f, s.values));
}

/// First sample index after which the impulse response stays below tol.
/// The response of the real double pole is single-humped, so the first
/// below-tol sample past the peak is the settling length.
inline std::size_t impulse_settling_length(const ButterworthFilter& f, double tol = 1e-12,
                                           std::size_t cap = 10'000'000) {
    double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
    double peak = 0.0;
    for (std::size_t n = 0; n < cap; ++n) {
        const double xn = (n == 0) ? 1.0 : 0.0;
        const double yn = f.b[0] * xn + f.b[1] * x1 + f.b[2] * x2 - f.a[1] * y1 - f.a[2] * y2;
        x2 = x1;
        x1 = xn;
        y2 = y1;
        y1 = yn;
        const double mag = std::abs(yn);
        if (mag > peak) peak = mag;
        if (peak > 0.0 && mag < tol && n > 2) return n;
    }
    throw NumericError("impulse_settling_length: no settling within cap");
}

}  // namespace scsa

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scsa/errors.hpp"
#include "scsa/grid.hpp"
#include "scsa/random.hpp"

namespace scsa {

enum class NoiseKind { gaussian_iid };

/// Additive noise description. Identical seeds give bit-identical sequences
/// (see GaussianSampler for the pinned generator).
struct NoiseModel {
    NoiseKind kind = NoiseKind::gaussian_iid;
    double mean = 0.0;
    double variance = 0.0;
    std::uint64_t seed = 0;
};

inline SampledSignal sech2_signal(const Grid& grid, double center) {
    std::vector<double> v(grid.M);
    for (std::size_t j = 0; j < grid.M; ++j) {
        const double c = std::cosh(grid.x(j) - center);
        v[j] = 1.0 / (c * c);
    }
    return SampledSignal(grid, std::move(v));
}

inline double l2_norm(const SampledSignal& s) {
    double acc = 0.0;
    for (double v : s.values) acc += v * v;
    return std::sqrt(acc);
}

/// Euclidean norm of the sample-wise difference (unweighted vector 2-norm).
inline double l2_error(const SampledSignal& a, const SampledSignal& b) {
    require_same_grid(a, b, "l2_error");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return std::sqrt(acc);
}

/// 10 log10(sum clean^2 / sum noise^2).
inline double snr_db(const SampledSignal& clean, const SampledSignal& noise) {
    require_same_grid(clean, noise, "snr_db");
    double pc = 0.0;
    double pn = 0.0;
    for (std::size_t j = 0; j < clean.size(); ++j) {
        pc += clean[j] * clean[j];
        pn += noise[j] * noise[j];
    }
    if (pn == 0.0) throw DomainError("snr_db: noise is identically zero");
    return 10.0 * std::log10(pc / pn);
}

struct NoisyObservation {
    SampledSignal noisy;
    SampledSignal noise;  // the realized sequence, returned for oracle checks
};

/// Adds noise drawn from the model. Without a target SNR the sequence is
/// mean + sqrt(variance) * g. With a target, a unit-variance sequence is
/// drawn first and rescaled so snr_db(clean, noise) hits the target exactly
/// (to rounding), which keeps acceptance checks free of calibration error.
inline NoisyObservation add_noise(const SampledSignal& clean, const NoiseModel& model,
                                  std::optional<double> target_snr_db = std::nullopt) {
    require_finite(clean, "add_noise");
    if (model.variance < 0.0) throw DomainError("add_noise: variance must be nonnegative");

    const std::size_t m = clean.size();
    GaussianSampler sampler(model.seed);
    std::vector<double> noise(m);

    if (target_snr_db) {
        double pc = 0.0;
        for (double v : clean.values) pc += v * v;
        if (pc == 0.0)
            throw DomainError("add_noise: cannot target an SNR against a zero signal");
        double praw = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            noise[j] = model.mean + sampler.next();
            praw += noise[j] * noise[j];
        }
        if (praw == 0.0) throw NumericError("add_noise: degenerate noise draw");
        const double alpha = std::sqrt(pc / (praw * std::pow(10.0, *target_snr_db / 10.0)));
        for (double& v : noise) v *= alpha;
    } else {
        const double sigma = std::sqrt(model.variance);
        for (std::size_t j = 0; j < m; ++j) noise[j] = model.mean + sigma * sampler.next();
    }

    std::vector<double> sum(m);
    for (std::size_t j = 0; j < m; ++j) sum[j] = clean[j] + noise[j];
    return {SampledSignal(clean.grid, std::move(sum)), SampledSignal(clean.grid, std::move(noise))};
}

}  // namespace scsa

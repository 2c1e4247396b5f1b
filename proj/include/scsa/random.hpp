#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace scsa {

/// Pinned standard-normal generator: mt19937_64 -> top 53 bits as a uniform
/// in (0,1) -> Box-Muller. std::normal_distribution is implementation-defined,
/// so the same seed would not reproduce across standard libraries; this
/// sequence is fixed by the mt19937_64 specification and libm.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::vector<double> draw(std::size_t n, double mean = 0.0, double stddev = 1.0) {
        std::vector<double> out(n);
        for (double& v : out) v = mean + stddev * next();
        return out;
    }

private:
    // (x >> 11) is in [0, 2^53); +0.5 keeps the result strictly inside (0,1)
    // so log(u1) is always finite.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace scsa

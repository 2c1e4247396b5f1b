#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "scsa/errors.hpp"

namespace scsa {

/// Uniform sampling lattice on [a, b] with M samples, dx = (b - a)/(M - 1).
/// Immutable after construction; shared by every signal that lives on it.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    std::size_t M = 2;
    double dx = 1.0;

    double x(std::size_t j) const { return a + static_cast<double>(j) * dx; }

    bool operator==(const Grid& other) const {
        return a == other.a && b == other.b && M == other.M;
    }
};

inline Grid make_grid(double a, double b, std::size_t M) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw DomainError("make_grid: endpoints must be finite");
    if (M < 2)
        throw DomainError("make_grid: need at least two samples, got " + std::to_string(M));
    if (!(b > a))
        throw DomainError("make_grid: right endpoint must exceed left endpoint");
    Grid g;
    g.a = a;
    g.b = b;
    g.M = M;
    g.dx = (b - a) / static_cast<double>(M - 1);
    return g;
}

/// M real samples on a grid. Values are raw; all derived quantities
/// (norms, spectra) take dx from the grid.
struct SampledSignal {
    Grid grid;
    std::vector<double> values;

    SampledSignal() = default;
    SampledSignal(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.M)
            throw DomainError("SampledSignal: value count does not match grid");
    }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t j) const { return values[j]; }
    double& operator[](std::size_t j) { return values[j]; }
};

inline void require_same_grid(const SampledSignal& s, const SampledSignal& t,
                              const char* where) {
    if (!(s.grid == t.grid))
        throw DomainError(std::string(where) + ": signals live on different grids");
}

inline void require_finite(const SampledSignal& s, const char* where) {
    for (double v : s.values)
        if (!std::isfinite(v))
            throw DomainError(std::string(where) + ": signal contains a non-finite value");
}

}  // namespace scsa

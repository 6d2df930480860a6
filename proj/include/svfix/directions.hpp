#pragma once

#include <cmath>
#include <vector>

#include "svfix/vec.hpp"

namespace svfix {

/// Deterministic low-discrepancy unit directions in R^dim.
/// dim 1 alternates +1/-1; dim 2 uses the golden-angle sequence; higher
/// dimensions map a Kronecker sequence through Box-Muller pairs.
inline std::vector<Vec> lowdisc_directions(std::size_t dim, std::size_t count) {
    std::vector<Vec> out;
    out.reserve(count);
    if (dim == 1) {
        for (std::size_t i = 0; i < count; ++i) out.push_back(Vec{i % 2 == 0 ? 1.0 : -1.0});
        return out;
    }
    if (dim == 2) {
        constexpr double golden = 0.6180339887498949;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = 2.0 * M_PI * std::fmod(0.5 + golden * static_cast<double>(i), 1.0);
            out.push_back(Vec{std::cos(t), std::sin(t)});
        }
        return out;
    }
    static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    const std::size_t pairs = (dim + 1) / 2;
    for (std::size_t i = 0; i < count; ++i) {
        Vec v(dim);
        for (std::size_t p = 0; p < pairs; ++p) {
            double u1 = std::fmod(0.5 + std::sqrt(primes[(2 * p) % 12]) * static_cast<double>(i + 1), 1.0);
            double u2 = std::fmod(0.5 + std::sqrt(primes[(2 * p + 1) % 12]) * static_cast<double>(i + 1), 1.0);
            if (u1 < 1e-12) u1 = 1e-12;
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double g1 = r * std::cos(2.0 * M_PI * u2);
            const double g2 = r * std::sin(2.0 * M_PI * u2);
            v[2 * p] = g1;
            if (2 * p + 1 < dim) v[2 * p + 1] = g2;
        }
        const double n = norm2(v);
        out.push_back(n < 1e-12 ? Vec(dim, 1.0 / std::sqrt(double(dim))) : scale(v, 1.0 / n));
    }
    return out;
}

}  // namespace svfix

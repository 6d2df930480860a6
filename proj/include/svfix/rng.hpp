#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "svfix/vec.hpp"

namespace svfix {

/// Deterministic random source. Distributions are hand-rolled on top of the
/// raw 64-bit stream so output never depends on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// uniform in [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t bits() { return gen_(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    double gaussian() {
        // Box-Muller; one value per call keeps replay simple
        double u1 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec unit_vec(std::size_t dim) {
        Vec v(dim);
        double n = 0.0;
        do {
            for (auto& c : v) c = gaussian();
            n = norm2(v);
        } while (n < 1e-12);
        return scale(v, 1.0 / n);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace svfix

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "svfix/error.hpp"

namespace svfix {

/// A point of R^k in model units. Dimension is carried by the length.
using Vec = std::vector<double>;

inline void check_same_dim(const Vec& a, const Vec& b, const char* where) {
    if (a.size() != b.size())
        throw DimensionError(std::string(where) + ": dimension mismatch (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2_sq(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(norm2_sq(a)); }

inline double dist(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dist");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline Vec add(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

/// a + s*b
inline Vec axpy(const Vec& a, double s, const Vec& b) {
    check_same_dim(a, b, "axpy");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

inline Vec normalized(const Vec& a) {
    const double n = norm2(a);
    if (n == 0.0) throw ContractViolation("normalized: zero vector");
    return scale(a, 1.0 / n);
}

inline bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

/// Concatenation (x, y) of two points, used for graph-space points.
inline Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

/// Finite point set stored column-major (one contiguous array per coordinate),
/// the layout the batch kernels consume.
struct PointSet {
    std::size_t dim = 0;
    std::vector<std::vector<double>> col;  // col[d][i], d < dim

    PointSet() = default;
    explicit PointSet(std::size_t dimension) : dim(dimension), col(dimension) {}

    std::size_t size() const { return dim == 0 ? 0 : col[0].size(); }
    bool empty() const { return size() == 0; }

    void push(const Vec& p) {
        if (p.size() != dim)
            throw DimensionError("PointSet::push: point dimension " + std::to_string(p.size()) +
                                 " != set dimension " + std::to_string(dim));
        for (std::size_t d = 0; d < dim; ++d) col[d].push_back(p[d]);
    }

    Vec row(std::size_t i) const {
        Vec p(dim);
        for (std::size_t d = 0; d < dim; ++d) p[d] = col[d][i];
        return p;
    }

    void reserve(std::size_t n) {
        for (auto& c : col) c.reserve(n);
    }
};

}  // namespace svfix

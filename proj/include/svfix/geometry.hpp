#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "svfix/rng.hpp"
#include "svfix/vec.hpp"

namespace svfix::geometry {

// ---------------------------------------------------------------------------
// Representations. All sets are closed; degenerate extents (radius 0,
// lo == hi) are legal and answer every query.

struct Box {
    Vec lo, hi;
};

struct Ball {
    Vec center;
    double radius = 0.0;
};

/// One inequality <normal, x> <= offset.
struct Halfspace {
    Vec normal;
    double offset = 0.0;
};

/// Bounded intersection of halfspaces. Construction enumerates the vertex
/// set, which later answers support and distance queries exactly.
struct HPolytope {
    std::vector<Halfspace> rows;
    std::vector<Vec> vertices;  // cached at construction
};

struct VPolytope {
    std::vector<Vec> vertices;
};

struct Segment {
    Vec p, q;
};

struct ConvexSet {
    std::variant<Box, Ball, HPolytope, VPolytope, Segment> rep;
    std::size_t dim() const;
};

ConvexSet make_box(Vec lo, Vec hi);
ConvexSet make_ball(Vec center, double radius);
/// Throws if the system is empty or unbounded (bounded sets only).
ConvexSet make_hpolytope(std::vector<Halfspace> rows);
ConvexSet make_vpolytope(std::vector<Vec> vertices);
ConvexSet make_segment(Vec p, Vec q);

// ---------------------------------------------------------------------------
// Queries. Formulas per representation:
//   distance: Box componentwise clamp; Ball center-ray; Segment parameter
//   clamp; VPolytope exact projection by face enumeration (k <= 4);
//   HPolytope exact projection by active-set enumeration over its rows.
//   support: Box cornerwise; Ball <c,u> + r|u|; VPolytope/HPolytope vertex
//   maximum; Segment endpoint maximum.

double distance_point_set(const Vec& p, const ConvexSet& S);
Vec project_point(const Vec& p, const ConvexSet& S);
bool contains(const ConvexSet& S, const Vec& p, double tol = 1e-9);

double support_function(const ConvexSet& S, const Vec& u);
Vec support_point(const ConvexSet& S, const Vec& u);

/// Lazy Minkowski inflation S + delta*B. A query adapter, not a stored
/// representation: support adds delta*|u| by construction.
struct Inflated {
    const ConvexSet& base;
    double delta;

    double support(const Vec& u) const;
    double distance(const Vec& p) const;
    bool contains(const Vec& p, double tol = 1e-9) const;
};
inline Inflated inflate(const ConvexSet& S, double delta) { return Inflated{S, delta}; }

/// Decides a + delta*B subseteq A + delta*B via support-function comparison
/// (never through a direct membership test of a in A, so the cancellation
/// equivalence stays independently testable).
struct InflationCheck {
    bool contained = false;
    bool exact = false;          // facet/edge-normal route vs sampled directions
    int directions_checked = 0;  // sample count when not exact
    std::optional<Vec> violating_direction;
    explicit operator bool() const { return contained; }
};
InflationCheck inflation_containment(const Vec& a, const ConvexSet& A, double delta,
                                     int directions = 256);

/// One-sided Hausdorff excess of finite point sets:
/// max over p in S1 of min over q in S2 of |p-q|. Throws EmptySetError.
struct ExcessResult {
    double value = 0.0;
    std::size_t farthest = 0;  // index into S1
};
ExcessResult hausdorff_excess(const PointSet& S1, const PointSet& S2);

/// min over q in S of |p - q|; S finite, nonempty.
double distance_to_point_set(const Vec& p, const PointSet& S);

// ---------------------------------------------------------------------------
// Rotundity

enum class Rotundity { Rotund, NotRotund, Inconclusive };

struct RotundityVerdict {
    Rotundity verdict = Rotundity::Inconclusive;
    struct Witness {
        Vec p, q;
        double midpoint_margin = 0.0;  // best interior depth along the open segment
    };
    std::optional<Witness> witness;  // present for NotRotund
    int samples_used = 0;
    double eta = 0.0;
    std::string note;
};

/// Samples boundary point pairs and probes the open segment between them
/// for interior depth. A pair whose probes all hug the boundary is a
/// NotRotund witness; all pairs clearing eta/8 certify Rotund.
RotundityVerdict rotund_check(const ConvexSet& S, double eta, int samples = 64);

/// t*x1 + (1-t)*x2 for t in [0,1].
Vec segment_point(const Vec& x1, const Vec& x2, double t);

// ---------------------------------------------------------------------------
// Sampling helpers used by the map probes.

/// Depth of p inside S: the largest margin m with Ball{p, m} subseteq S
/// (negative outside). exact is false only for VPolytope in k >= 3, where
/// the depth is a sampled upper bound.
struct DepthResult {
    double depth = 0.0;
    bool exact = true;
};
DepthResult interior_depth(const ConvexSet& S, const Vec& p, int dir_samples = 128);

/// Axis-aligned bounding box via support calls.
Box bounding_box(const ConvexSet& S);

/// A point well inside the set (center/centroid per representation).
Vec anchor_point(const ConvexSet& S);

/// Boundary points spread with low-discrepancy support directions
/// (plus corners/vertices where the representation has them).
std::vector<Vec> boundary_samples(const ConvexSet& S, std::size_t count);

/// Interior points: convex combinations of the anchor and boundary samples.
std::vector<Vec> interior_samples(const ConvexSet& S, std::size_t count, Rng& rng);

/// Grid points of spacing h inside S (bounding-box grid filtered by
/// membership). Used for dense one-sided excess checks.
PointSet dense_sample(const ConvexSet& S, double h);

PointSet to_point_set(const std::vector<Vec>& points, std::size_t dim);

}  // namespace svfix::geometry

#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "svfix/certify_core.hpp"
#include "svfix/exprdsl.hpp"
#include "svfix/geometry.hpp"

namespace svfix::mapping {

/// Compact box domain discretized at resolution h. Grid points are exactly
/// lo + j*h componentwise, clipped to hi (hi itself always included).
/// The optional mask keeps a grid point when its expression is positive.
class GridDomain {
public:
    GridDomain(Vec lo, Vec hi, double h, std::optional<expr::Expr> mask = std::nullopt);

    std::size_t dim() const { return lo_.size(); }
    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }
    double resolution() const { return h_; }
    const PointSet& points() const { return points_; }
    const std::vector<double>& axis(std::size_t i) const { return axes_[i]; }

    geometry::ConvexSet box() const { return geometry::make_box(lo_, hi_); }
    bool in_box(const Vec& x, double tol = 1e-9) const;

private:
    Vec lo_, hi_;
    double h_;
    std::optional<expr::Expr> mask_;
    std::vector<std::vector<double>> axes_;
    PointSet points_;
};

enum class MapFamily { IntervalBox, BallValued, ConstantSet, Singleton, External };

/// Declarative family of parametric set-valued maps. Expressions see the
/// point as x1..xN and the parameter as l1..lP (and u1..uQ where a second
/// parameter block is bound by the caller).
struct SetValuedMapDef {
    MapFamily family = MapFamily::IntervalBox;
    std::vector<expr::Expr> lo_exprs, hi_exprs;  // IntervalBox, one per coordinate
    std::vector<expr::Expr> center_exprs;        // BallValued
    std::optional<expr::Expr> radius_expr;       // BallValued
    std::vector<expr::Expr> g_exprs;             // Singleton
    std::optional<geometry::ConvexSet> constant_set;
    bool clamp_to_domain = false;
};

/// A map family bound to its domain grid and parameter box: T(x, lambda)
/// with values that are nonempty convex sets (anything else is a reported
/// evaluation failure, never silent emptiness).
class ParametricMap {
public:
    using EvalFn = std::function<geometry::ConvexSet(const Vec& x, const Vec& lam)>;

    ParametricMap(SetValuedMapDef def, GridDomain domain, Vec param_lo, Vec param_hi);
    /// Function-backed map (discontinuous test families live here).
    ParametricMap(EvalFn fn, GridDomain domain, Vec param_lo, Vec param_hi);

    const GridDomain& domain() const { return domain_; }
    std::size_t x_dim() const { return domain_.dim(); }
    std::size_t p_dim() const { return param_lo_.size(); }
    const Vec& param_lo() const { return param_lo_; }
    const Vec& param_hi() const { return param_hi_; }
    MapFamily family() const { return def_.family; }
    bool dsl_backed() const { return def_.family != MapFamily::External; }

    /// T(x, lambda), clamped to the domain box when the definition asks for
    /// it. Throws Error with (x, lambda) attached on any evaluation failure.
    geometry::ConvexSet evaluate(const Vec& x, const Vec& lam) const;

    /// d(x_i, T(x_i, lambda)) for every point of xs. DSL-backed families run
    /// through the batch kernels; external maps fall back to per-point
    /// evaluation.
    std::vector<double> residuals(const PointSet& xs, const Vec& lam) const;

    /// Boundary + interior points of the value T(x, lambda).
    std::vector<Vec> value_samples(const Vec& x, const Vec& lam, std::size_t boundary,
                                   std::size_t interior, Rng& rng) const;

private:
    struct Compiled;
    SetValuedMapDef def_;
    GridDomain domain_;
    Vec param_lo_, param_hi_;
    EvalFn fn_;
    std::shared_ptr<const Compiled> compiled_;

    friend struct MapBatch;
};

// ---------------------------------------------------------------------------
// Graph machinery

struct GraphSample {
    std::size_t x_dim = 0;
    PointSet pts;                   // (x, y) rows in R^{x_dim + y_dim}
    std::vector<char> is_boundary;  // per row
    Vec lambda0;
    double tol = 0.0;  // membership tolerance every recorded pair satisfies
};

/// Extreme points plus per_x interior samples of T(x, lambda0) over the grid.
GraphSample graph_sample(const ParametricMap& T, const Vec& lambda0, int per_x,
                         std::uint64_t seed = 42);

/// Re-checks the defining membership of every recorded pair (used on load).
bool graph_sample_consistent(const GraphSample& gs, const ParametricMap& T);

struct ConvexityVerdict {
    bool convex = true;
    struct Witness {
        Vec x1, y1, x2, y2;
        double t = 0.0;
        double violation = 0.0;  // distance of the blended y from the blended value
    };
    std::optional<Witness> witness;
    int pairs_checked = 0;
};

/// Blends random graph-sample pairs at t in {0.25, 0.5, 0.75} and checks the
/// blended point stays in the graph within tol.
ConvexityVerdict graph_convexity_check(const GraphSample& gs, const ParametricMap& T, double tol,
                                       int pairs = 256, std::uint64_t seed = 42);

/// Set-rotundity of the sampled graph in R^{2N}: boundary pairs are probed
/// along the open segment for eta-interiority (4N axis probes plus 8 seeded
/// random directions per point).
geometry::RotundityVerdict graph_rotundity_check(const GraphSample& gs, const ParametricMap& T,
                                                 double eta, std::uint64_t seed = 42);

// ---------------------------------------------------------------------------
// Continuity probes. Sequences approach (x0, lambda0) jointly; distances are
// classified by the decay criterion in certify_core.

cert::Certificate map_lsc_probe(const ParametricMap& T, const Vec& x0, const Vec& lambda0,
                                const cert::SeqSpec& spec);
cert::Certificate map_usc_probe(const ParametricMap& T, const Vec& x0, const Vec& lambda0,
                                const cert::SeqSpec& spec);
cert::Certificate map_hlsc_probe(const ParametricMap& T, const Vec& x0, const Vec& lambda0,
                                 const cert::SeqSpec& spec);

struct RangeCheck {
    bool pass = true;
    double worst_violation = 0.0;
    Vec worst_x, worst_lambda;
    double tol = 0.0;
};

/// Worst one-sided excess of T(x, lambda) over the domain box across the
/// full grid and a lambda sample (per-axis linspace through the parameter
/// box, anchored to include the midpoint).
RangeCheck range_containment_check(const ParametricMap& T, int lambda_samples_per_axis = 9,
                                   double tol = 1e-9);

}  // namespace svfix::mapping

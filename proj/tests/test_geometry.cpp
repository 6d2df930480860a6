#include <doctest.h>

#include <cmath>
#include <random>

#include "svfix/geometry.hpp"

using namespace svfix;
using namespace svfix::geometry;

namespace {

constexpr unsigned kSeed = 42;

Vec rvec(std::mt19937_64& gen, std::size_t dim, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    Vec v(dim);
    for (auto& x : v) x = d(gen);
    return v;
}

ConvexSet random_box(std::mt19937_64& gen, std::size_t dim) {
    Vec a = rvec(gen, dim), b = rvec(gen, dim);
    Vec lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        lo[i] = std::min(a[i], b[i]);
        hi[i] = std::max(a[i], b[i]) + 0.05;
    }
    return make_box(lo, hi);
}

ConvexSet random_ball(std::mt19937_64& gen, std::size_t dim) {
    std::uniform_real_distribution<double> r(0.1, 1.5);
    return make_ball(rvec(gen, dim), r(gen));
}

ConvexSet random_vpoly(std::mt19937_64& gen, std::size_t dim, std::size_t nverts) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < nverts; ++i) vs.push_back(rvec(gen, dim));
    return make_vpolytope(std::move(vs));
}

PointSet pset1(std::initializer_list<double> xs) {
    PointSet s(1);
    for (double x : xs) s.push(Vec{x});
    return s;
}

}  // namespace

TEST_CASE("distance: worked values") {
    CHECK(distance_point_set(Vec{0, 0}, make_ball(Vec{1, 1}, 1.0)) ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
    CHECK(distance_point_set(Vec{0.5}, make_box(Vec{0.8}, Vec{1.2})) ==
          doctest::Approx(0.3).epsilon(1e-12));
    CHECK(distance_point_set(Vec{1, 1}, make_ball(Vec{1, 1}, 1.0)) == 0.0);
    CHECK_THROWS_AS(distance_point_set(Vec{0.0}, make_ball(Vec{1, 1}, 1.0)), DimensionError);
}

TEST_CASE("support: worked values") {
    CHECK(support_function(make_ball(Vec{0, 0}, 1.0), Vec{1, 0}) == doctest::Approx(1.0));
    CHECK(support_function(make_box(Vec{0, 0}, Vec{1, 1}), Vec{1, 1}) == doctest::Approx(2.0));
    CHECK(support_function(make_vpolytope({Vec{0, 0}, Vec{2, 0}}), Vec{-1, 0}) ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(support_function(make_ball(Vec{0, 0}, 1.0), Vec{0, 0}), ContractViolation);
}

TEST_CASE("inflation containment: worked values") {
    const auto box = make_box(Vec{0, 0}, Vec{1, 1});
    CHECK(inflation_containment(Vec{0.5, 0.5}, box, 0.5).contained);
    CHECK_FALSE(inflation_containment(Vec{1.1, 0.5}, box, 0.5).contained);
    CHECK(inflation_containment(Vec{1.0, 0.5}, box, 0.25).contained);  // boundary membership
    CHECK_THROWS_AS(inflation_containment(Vec{0.5, 0.5}, box, 0.0), ContractViolation);
}

TEST_CASE("hausdorff excess: worked values and empty-set error") {
    CHECK(hausdorff_excess(pset1({0}), pset1({0, 1})).value == 0.0);
    CHECK(hausdorff_excess(pset1({0, 1}), pset1({0})).value == doctest::Approx(1.0));
    CHECK(hausdorff_excess(pset1({0.25}), pset1({0.3, 0.9})).value ==
          doctest::Approx(0.05).epsilon(1e-12));
    CHECK_THROWS_AS(hausdorff_excess(PointSet(1), pset1({0})), EmptySetError);
}

TEST_CASE("segment_point") {
    CHECK(segment_point(Vec{1, 0}, Vec{0, 0}, 0.5) == Vec{0.5, 0});
    CHECK(segment_point(Vec{1, 0}, Vec{0, 3}, 0.0) == Vec{0, 3});
    CHECK(segment_point(Vec{1, 0}, Vec{0, 3}, 1.0) == Vec{1, 0});
    CHECK(segment_point(Vec{2, 2}, Vec{2, 2}, 0.25) == Vec{2, 2});
    CHECK_THROWS_AS(segment_point(Vec{1}, Vec{0}, 1.5), ContractViolation);
}

TEST_CASE("rotundity: worked verdicts") {
    const auto ball = rotund_check(make_ball(Vec{1, 1}, 1.0), 1e-3);
    CHECK(ball.verdict == Rotundity::Rotund);

    const auto box = rotund_check(make_box(Vec{0, 0}, Vec{1, 1}), 1e-3);
    CHECK(box.verdict == Rotundity::NotRotund);
    REQUIRE(box.witness.has_value());
    CHECK(box.witness->midpoint_margin <= 1e-9);
    // the witness pair lies on the boundary
    CHECK(interior_depth(make_box(Vec{0, 0}, Vec{1, 1}), box.witness->p).depth ==
          doctest::Approx(0.0).epsilon(1e-9));

    const auto seg = rotund_check(make_segment(Vec{0, 0}, Vec{1, 1}), 1e-3);
    CHECK(seg.verdict == Rotundity::NotRotund);

    // one-dimensional closed interval: boundary is two points, no segments
    CHECK(rotund_check(make_box(Vec{0}, Vec{1}), 1e-3).verdict == Rotundity::Rotund);
    // degenerate single point is vacuously rotund
    CHECK(rotund_check(make_ball(Vec{0.5, 0.5}, 0.0), 1e-3).verdict == Rotundity::Rotund);
    CHECK_THROWS_AS(rotund_check(make_ball(Vec{0, 0}, 1.0), 0.0), ContractViolation);
}

TEST_CASE("property: distance zero iff membership") {
    std::mt19937_64 gen(kSeed);
    for (int it = 0; it < 400; ++it) {
        const std::size_t dim = 1 + gen() % 3;
        ConvexSet S = (it % 4 == 0)   ? random_box(gen, dim)
                      : (it % 4 == 1) ? random_ball(gen, dim)
                      : (it % 4 == 2) ? random_vpoly(gen, dim, 3 + gen() % 4)
                                      : make_segment(rvec(gen, dim), rvec(gen, dim));
        const Vec p = rvec(gen, dim, -3.0, 3.0);
        const double d = distance_point_set(p, S);
        CHECK(d >= 0.0);
        CHECK((d <= 1e-9) == contains(S, p, 1e-9));
        // projection lies in the set and attains the distance
        const Vec pr = project_point(p, S);
        CHECK(distance_point_set(pr, S) <= 1e-8);
        CHECK(dist(p, pr) == doctest::Approx(d).epsilon(1e-9));
    }
}

TEST_CASE("property: inflation containment equals membership (cancellation law)") {
    std::mt19937_64 gen(kSeed + 1);
    std::uniform_real_distribution<double> du(0.0, 10.0);
    int checked = 0;
    for (int it = 0; it < 1200; ++it) {
        const std::size_t dim = 1 + gen() % 2;
        ConvexSet S = (it % 3 == 0) ? random_box(gen, dim)
                      : (it % 3 == 1)
                          ? random_ball(gen, dim)
                          : random_vpoly(gen, 2, 3 + gen() % 5);
        const std::size_t sdim = S.dim();
        Vec p = rvec(gen, sdim, -3.0, 3.0);
        // avoid the ambiguous shell around the boundary
        const double d = distance_point_set(p, S);
        if (d > 0.0 && d < 1e-6) continue;
        const double delta = du(gen) + 1e-3;
        const auto got = inflation_containment(p, S, delta);
        CHECK(got.exact);
        CHECK(got.contained == (d <= 1e-9));
        ++checked;
    }
    CHECK(checked >= 1000);
}

TEST_CASE("property: support additivity under inflation") {
    std::mt19937_64 gen(kSeed + 2);
    std::uniform_real_distribution<double> du(0.0, 3.0);
    for (int it = 0; it < 300; ++it) {
        const std::size_t dim = 1 + gen() % 3;
        ConvexSet S = (it % 3 == 0)   ? random_box(gen, dim)
                      : (it % 3 == 1) ? random_ball(gen, dim)
                                      : random_vpoly(gen, dim, 2 + gen() % 4);
        Vec u = rvec(gen, dim);
        if (norm2(u) < 1e-6) continue;
        const double delta = du(gen);
        const auto inf = inflate(S, delta);
        CHECK(inf.support(u) ==
              doctest::Approx(support_function(S, u) + delta * norm2(u)).epsilon(1e-12));
    }
}

TEST_CASE("property: excess zero iff subset (finite sets)") {
    std::mt19937_64 gen(kSeed + 3);
    for (int it = 0; it < 200; ++it) {
        const std::size_t dim = 1 + gen() % 3;
        PointSet b(dim);
        const std::size_t nb = 2 + gen() % 8;
        for (std::size_t i = 0; i < nb; ++i) b.push(rvec(gen, dim));
        PointSet a(dim);
        bool subset = true;
        const std::size_t na = 1 + gen() % 6;
        for (std::size_t i = 0; i < na; ++i) {
            if (gen() % 2 == 0) {
                a.push(b.row(gen() % nb));
            } else {
                a.push(rvec(gen, dim, 2.5, 3.5));  // clearly outside b's range
                subset = false;
            }
        }
        const auto ex = hausdorff_excess(a, b);
        CHECK((ex.value == 0.0) == subset);
    }
}

TEST_CASE("property: rotundity discriminates balls from boxes and segments") {
    std::mt19937_64 gen(kSeed + 4);
    std::uniform_real_distribution<double> r(2e-3, 1.5);
    for (int it = 0; it < 60; ++it) {
        const std::size_t dim = 1 + gen() % 3;
        CHECK(rotund_check(make_ball(rvec(gen, dim), r(gen)), 1e-3).verdict == Rotundity::Rotund);
    }
    for (int it = 0; it < 60; ++it) {
        const std::size_t dim = 2 + gen() % 2;
        CHECK(rotund_check(random_box(gen, dim), 1e-3).verdict == Rotundity::NotRotund);
        Vec p = rvec(gen, dim), q = rvec(gen, dim);
        if (dist(p, q) < 1e-6) continue;
        CHECK(rotund_check(make_segment(p, q), 1e-3).verdict == Rotundity::NotRotund);
    }
}

TEST_CASE("hpolytope: construction enumerates vertices; rejects empty and unbounded") {
    // unit square as four halfspaces
    const auto sq = make_hpolytope({{Vec{1, 0}, 1.0},
                                    {Vec{-1, 0}, 0.0},
                                    {Vec{0, 1}, 1.0},
                                    {Vec{0, -1}, 0.0}});
    const auto* rep = std::get_if<HPolytope>(&sq.rep);
    REQUIRE(rep != nullptr);
    CHECK(rep->vertices.size() == 4);
    CHECK(distance_point_set(Vec{2, 0.5}, sq) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(distance_point_set(Vec{0.5, 0.5}, sq) == 0.0);
    CHECK(support_function(sq, Vec{1, 1}) == doctest::Approx(2.0).epsilon(1e-9));

    CHECK_THROWS_AS(make_hpolytope({{Vec{1, 0}, -1.0}, {Vec{-1, 0}, -1.0}}),
                    ContractViolation);  // empty: x <= -1 and x >= 1
    CHECK_THROWS_AS(make_hpolytope({{Vec{1, 0}, 1.0}}), ContractViolation);  // halfplane
}

TEST_CASE("projection satisfies the variational inequality (polytopes)") {
    std::mt19937_64 gen(kSeed + 5);
    for (int it = 0; it < 150; ++it) {
        const std::size_t dim = 2 + gen() % 2;
        ConvexSet S = random_vpoly(gen, dim, 3 + gen() % 5);
        const Vec p = rvec(gen, dim, -4.0, 4.0);
        const Vec pr = project_point(p, S);
        const auto& verts = std::get<VPolytope>(S.rep).vertices;
        // <p - pr, v - pr> <= 0 for all vertices characterizes the projection
        for (const auto& v : verts) CHECK(dot(sub(p, pr), sub(v, pr)) <= 1e-7);
        // and the distance is a lower bound on vertex distances
        for (const auto& v : verts) CHECK(dist(p, pr) <= dist(p, v) + 1e-9);
    }
}

TEST_CASE("interior depth closd forms") {
    CHECK(interior_depth(make_box(Vec{0, 0}, Vec{2, 1}), Vec{0.25, 0.5}).depth ==
          doctest::Approx(0.25));
    CHECK(interior_depth(make_ball(Vec{0, 0}, 1.0), Vec{0.5, 0}).depth == doctest::Approx(0.5));
    CHECK(interior_depth(make_box(Vec{0}, Vec{1}), Vec{2.0}).depth == doctest::Approx(-1.0));
}

TEST_CASE("dense sample of a ball stays inside and fills it") {
    const auto ball = make_ball(Vec{0, 0}, 1.0);
    const auto pts = dense_sample(ball, 0.2);
    CHECK(pts.size() > 50);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(distance_point_set(pts.row(i), ball) <= 1e-9);
}

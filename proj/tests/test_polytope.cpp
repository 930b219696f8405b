#include <gtest/gtest.h>

#include <random>

#include "lfd/polytope.hpp"

using namespace lfd;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST(Polytope, BoxVolumeAndNormals) {
    PlaneRegistry reg;
    const ConvexCell box = make_box({-1, -2, -3}, {1, 2, 3}, reg);
    EXPECT_NEAR(box.volume(), 48.0, 1e-12);
    EXPECT_EQ(box.facets.size(), 6u);
    for (const Facet& f : box.facets) {
        const Vec3 n = box.outward_normal(f, reg);
        const auto poly = box.facet_polygon(f);
        // loops are counter-clockwise about the outward normal
        const Vec3 area = cross(poly[1] - poly[0], poly[2] - poly[0]);
        EXPECT_GT(dot(area, n), 0.0);
        EXPECT_GT(dot(poly[0] - box.centroid(), n), 0.0);
    }
    EXPECT_TRUE(box.contains({0.5, 0.5, 0.5}, reg));
    EXPECT_FALSE(box.contains({1.5, 0.5, 0.5}, reg));
}

TEST(Polytope, RegistryDeduplicatesAndOrients) {
    PlaneRegistry reg;
    const auto a = reg.add(Plane::through({1, 0, 0}, 0.5));
    const auto b = reg.add(Plane::through({-2, 0, 0}, -1.0));
    EXPECT_EQ(a.id, b.id);
    EXPECT_EQ(a.side, 1);
    EXPECT_EQ(b.side, -1);
    EXPECT_EQ(reg.size(), 1u);
}

TEST(Polytope, SplitPreservesVolume) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        PlaneRegistry reg;
        const ConvexCell box = make_box({-1, -1, -1}, {1, 1, 1}, reg);
        const Plane p = Plane::through(normalized(Vec3{u(rng), u(rng), u(rng)}), 0.5 * u(rng));
        const auto h = reg.add(p);
        const SplitResult s = split_cell(box, h.id, reg);
        ASSERT_TRUE(s.below && s.above);
        EXPECT_NEAR(s.below->volume() + s.above->volume(), 8.0, 1e-10);
        const Plane& canon = reg.plane(h.id);
        for (const Vec3& v : s.below->vertices) EXPECT_LE(canon.signed_distance(v), 1e-10);
        for (const Vec3& v : s.above->vertices) EXPECT_GE(canon.signed_distance(v), -1e-10);
        // a second split of a child stays consistent
        const auto g = reg.add(Plane::through(normalized(Vec3{u(rng), u(rng), u(rng)}), 0.2 * u(rng)));
        const SplitResult t = split_cell(*s.below, g.id, reg);
        double sum = 0.0;
        if (t.below) sum += t.below->volume();
        if (t.above) sum += t.above->volume();
        EXPECT_NEAR(sum, s.below->volume(), 1e-10);
    }
}

TEST(Polytope, ClipBoxOctahedron) {
    PlaneRegistry reg;
    std::vector<Plane> hs;
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1}) hs.push_back(Plane::through(normalized(Vec3{double(a), double(b), double(c)}), 1.0 / std::sqrt(3.0)));
    const ConvexCell oct = clip_box({-2, -2, -2}, {2, 2, 2}, hs, reg);
    EXPECT_NEAR(oct.volume(), 4.0 / 3.0, 1e-12);
    EXPECT_EQ(oct.vertices.size(), 6u);
    EXPECT_EQ(oct.facets.size(), 8u);
}

TEST(Polytope, GrundmannMoellerExactOnMonomials) {
    // integral of x^a y^b z^c over the unit simplex is a! b! c! / (a+b+c+3)!
    const std::array<Vec3, 4> unit{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3 - a; ++b)
            for (int c = 0; c <= 7 - a - b && c <= 4; ++c) {
                const auto f = [&](const Vec3& v) { return std::pow(v.x, a) * std::pow(v.y, b) * std::pow(v.z, c); };
                const double exact = factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
                EXPECT_NEAR(integrate_tetrahedron(unit, f, 3), exact, 1e-14) << a << b << c;
            }
    const std::array<Vec3, 4> tet{Vec3{1, 0, 0}, Vec3{0, 2, 0}, Vec3{0, 0, 3}, Vec3{1, 1, 1}};
    EXPECT_NEAR(integrate_tetrahedron(tet, [](const Vec3&) { return 1.0; }), tetrahedron_volume(tet), 1e-14);
}

TEST(Polytope, PolygonHelpers) {
    const Polygon2 square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    EXPECT_NEAR(polygon_area(square), 4.0, 1e-15);
    EXPECT_NEAR(polygon_area(clip_polygon(square, 1.0, 0.0, 1.0)), 2.0, 1e-15);
    const Polygon2 hole{{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}};
    double rest = 0.0;
    for (const auto& p : subtract_convex(square, hole)) rest += std::abs(polygon_area(p));
    EXPECT_NEAR(rest, 3.0, 1e-14);
    double none = 0.0;
    for (const auto& p : subtract_convex(hole, square)) none += std::abs(polygon_area(p));
    EXPECT_NEAR(none, 0.0, 1e-14);
    const std::vector<Vec3> tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    EXPECT_NEAR(point_polygon_distance({0.2, 0.2, 0.5}, tri), 0.5, 1e-15);
    EXPECT_NEAR(point_polygon_distance({2, 0, 0}, tri), 1.0, 1e-15);
}

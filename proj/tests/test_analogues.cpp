#include <gtest/gtest.h>

#include <cmath>

#include "lfd/analogues.hpp"
#include "lfd/error.hpp"

using namespace lfd;

TEST(Analogues, Hexagon) {
    const So2Domain h = so2_domain(6);
    ASSERT_EQ(h.vertices.size(), 6u);
    for (const PlanePoint& v : h.vertices) EXPECT_NEAR(std::hypot(v.x, v.y), 2.0 / std::sqrt(3.0), 1e-12);
    double total = 0.0;
    for (const Arc& a : h.arcs) {
        EXPECT_NEAR(a.length(), M_PI / 3.0, 1e-12);
        total += a.length();
    }
    EXPECT_NEAR(total, 2.0 * M_PI, 1e-12);
    // consecutive arcs abut
    for (std::size_t k = 0; k < h.arcs.size(); ++k) {
        const double gap = std::remainder(h.arcs[(k + 1) % 6].start - h.arcs[k].end, 2.0 * M_PI);
        EXPECT_NEAR(gap, 0.0, 1e-12);
    }
}

TEST(Analogues, SquareAndDegenerateCases) {
    for (const PlanePoint& v : so2_domain(4).vertices) EXPECT_NEAR(std::hypot(v.x, v.y), std::sqrt(2.0), 1e-12);
    for (int m : {3, 5, 11})
        for (const PlanePoint& v : so2_domain(m).vertices) EXPECT_NEAR(std::hypot(v.x, v.y), 1.0 / std::cos(M_PI / m), 1e-12);
    EXPECT_THROW(so2_domain(2), Error);
    EXPECT_THROW(so2_domain(1), Error);
}

TEST(Analogues, MinkowskiFaces) {
    for (double d : {0.3, 1.0, 1.7}) {
        const So11Domain s = so11_domain(d, 4);
        ASSERT_EQ(s.faces.size(), 7u);
        for (const So11Face& f : s.faces) {
            EXPECT_NEAR(f.image.length(), d, 1e-12);
            EXPECT_NEAR(f.image.start, (f.k - 0.5) * d, 1e-12);
            // both ends are on the tangent line at z(kd)
            for (const PlanePoint& p : f.ends) {
                const PlanePoint g = hyperbola_point(f.k * d);
                const double scale = std::hypot(p.x, p.y) * std::hypot(g.x, g.y);
                EXPECT_NEAR(minkowski_form(p, g), -1.0, 1e-15 * scale + 1e-14);
            }
        }
        for (int k = -4; k < 4; ++k) {
            const PlanePoint v = s.vertices[static_cast<std::size_t>(k + 4)];
            const PlanePoint want = hyperbola_point((k + 0.5) * d);
            EXPECT_NEAR(v.x, want.x / std::cosh(d / 2.0), 1e-12);
            EXPECT_NEAR(v.y, want.y / std::cosh(d / 2.0), 1e-12);
        }
        // the fundamental segment is centred on z(0, +1)
        const So11Face& f0 = s.faces[3];
        EXPECT_EQ(f0.k, 0);
        EXPECT_NEAR(0.5 * (f0.image.start + f0.image.end), 0.0, 1e-12);
    }
}

TEST(Analogues, ProjectionEquivariance) {
    const double d = 0.8;
    const So11Domain s = so11_domain(d, 5);
    for (const So11Face& f : s.faces)
        for (double t : {0.1, 0.5, 0.9}) {
            const PlanePoint a{f.ends[0].x + t * (f.ends[1].x - f.ends[0].x), f.ends[0].y + t * (f.ends[1].y - f.ends[0].y)};
            EXPECT_NEAR(hyperbola_parameter(boost(a, d)), hyperbola_parameter(a) + d, 1e-12);
        }
}

TEST(Analogues, FullIntersectionCollapses) {
    double last = 1e300;
    for (int n : {2, 4, 8, 16}) {
        const So11Domain s = so11_domain(1.0, n);
        EXPECT_LT(s.full_intersection_diameter, last);
        last = s.full_intersection_diameter;
        // (0, 0) stays inside
        for (std::size_t i = 0; i < s.full_intersection.size(); ++i) {
            const PlanePoint a = s.full_intersection[i], b = s.full_intersection[(i + 1) % s.full_intersection.size()];
            EXPECT_GE(a.x * b.y - a.y * b.x, -1e-15);
        }
    }
    EXPECT_LT(last, 1e-5);
    EXPECT_THROW(so11_domain(0.0, 3), Error);
}

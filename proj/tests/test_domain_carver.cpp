#include <gtest/gtest.h>

#include "lfd/domain_carver.hpp"
#include "lfd/error.hpp"

using namespace lfd;

namespace {

struct Carved {
    LiftedGroup group;
    CarveRun run;
};

const Carved& e12() {
    static const Carved c = [] {
        Carved out{lifted_group({2, 3, 7}, {0, 0, 0}), {}};
        out.run = carve_adaptive(out.group);
        return out;
    }();
    return c;
}

}  // namespace

TEST(DomainCarver, CutterSet) {
    const auto& c = e12();
    const int window = 3;
    const auto cutters = cutter_set(c.group, c.run.atlas, window);
    int wedge = 0;
    for (const Cutter& k : cutters) {
        if (k.label.kind == CutterLabel::Kind::Wedge) {
            ++wedge;
            EXPECT_EQ(k.label.point, 0u);
            EXPECT_NEAR(std::abs(k.half_space.n.z), 1.0, 1e-12);
            EXPECT_NEAR(std::abs(k.half_space.d), std::tan(c.group.theta / 2.0), 1e-12);
            // the I-side of the wedge planes is the far side of the slab
            EXPECT_GT(k.half_space.signed_distance({0, 0, 0}), 0.0);
        } else {
            EXPECT_NE(k.label.point, 0u);
        }
    }
    EXPECT_EQ(wedge, 2);
    EXPECT_EQ(cutters.size(), 2 + (c.run.atlas.points.size() - 1) * (2 * window + 1));
}

TEST(DomainCarver, CertificateCoversExcludedPoints) {
    const auto& c = e12();
    const OrbitAtlas finer = orbit_enumerate(c.group, c.run.atlas.epsilon / 4.0);
    for (const OrbitPoint& p : finer.points)
        if (!c.run.atlas.find(p.x)) EXPECT_LT(p.f, c.run.complex.min_margin);
    EXPECT_GT(c.run.complex.min_margin, c.run.atlas.epsilon);
}

TEST(DomainCarver, CompactAndBoundedByStarRadius) {
    const auto& cx = e12().run.complex;
    EXPECT_FALSE(cx.cells.empty());
    EXPECT_GT(chart_volume(cx), 0.0);
    const double rmax = 1.0 / std::cos(kPi / 14.0);
    for (const Vec3& v : cx.vertices) {
        const CoverPoint a = chart_lift(v);
        EXPECT_LE(a.r, rmax + 1e-9);
        EXPECT_LE(std::abs(v.z), std::tan(kPi / 14.0) + 1e-9);
    }
    EXPECT_EQ(cx.components, 1);
    EXPECT_EQ(cx.euler_characteristic(), 2);
    const Mesh mesh = euclideanize(cx);
    EXPECT_TRUE(mesh.is_closed());
    EXPECT_EQ(mesh.euler_characteristic(), 2);
    for (std::size_t i = 0; i < cx.boundary_points.size(); ++i) EXPECT_EQ(mesh.vertices[i], cx.boundary_points[i]);
}

TEST(DomainCarver, OriginOnSlice) {
    const auto& c = e12();
    EXPECT_TRUE(in_fundamental_domain(c.group, c.run.atlas, {0, 0, 0}));
    EXPECT_TRUE(locate(c.run.complex, {0, 0, 0}).inside);
    const BoundarySection b = boundary_section(c.group, c.run.atlas, GroupElement::identity(), 8);
    EXPECT_NEAR(b.value, 1.0, 1e-12);
}

TEST(DomainCarver, CellsAgreeWithPointwiseMembership) {
    const auto& c = e12();
    const auto& cx = c.run.complex;
    for (const ConvexCell& cell : cx.cells) {
        EXPECT_TRUE(in_fundamental_domain(c.group, c.run.atlas, cell.centroid()));
        for (const Vec3& v : cell.vertices) {
            // pull vertices slightly inward
            const Vec3 inner = v + (cell.centroid() - v) * 1e-6;
            EXPECT_TRUE(in_fundamental_domain(c.group, c.run.atlas, inner, 1e-9));
        }
    }
    // just outside a prism face the point is excluded
    for (const Face& f : cx.faces) {
        if (f.label.kind != CutterLabel::Kind::Prism) continue;
        Vec3 centre;
        for (const Vec3& v : f.pieces[0]) centre += v;
        centre = centre / static_cast<double>(f.pieces[0].size());
        EXPECT_FALSE(in_fundamental_domain(c.group, c.run.atlas, centre + f.outward * 1e-4));
        EXPECT_TRUE(in_fundamental_domain(c.group, c.run.atlas, centre - f.outward * 1e-4));
    }
}

TEST(DomainCarver, FacePairing) {
    const auto& c = e12();
    const FacePairing fp = face_pairing(c.group, c.run.atlas, c.run.complex);
    EXPECT_TRUE(fp.unmatched.empty());
    EXPECT_EQ(fp.entries.size(), c.run.complex.faces.size());
    EXPECT_TRUE(fp.is_involution());
    for (const PairingEntry& e : fp.entries) {
        EXPECT_NE(e.face, e.partner);
        EXPECT_LT(e.residual, 1e-6);
        const Face& a = c.run.complex.faces[e.face];
        const Face& b = c.run.complex.faces[e.partner];
        EXPECT_EQ(a.label.kind, b.label.kind);
        if (a.label.kind == CutterLabel::Kind::Wedge) {
            EXPECT_EQ(a.label.m, -b.label.m);
            EXPECT_LT(element_distance(e.mapping, power(c.group.rd, -a.label.m)), 1e-9);
        }
        EXPECT_NEAR(a.area, b.area, 1e-6);
    }
}

TEST(DomainCarver, Tiling) {
    const auto& c = e12();
    TilingOptions opt;
    opt.samples = 400;
    opt.seed = 99;
    const TilingReport r = verify_tiling(c.group, c.run.atlas, c.run.complex, opt);
    EXPECT_EQ(r.covered, r.samples);
    EXPECT_EQ(r.double_interior, 0u);
}

TEST(DomainCarver, InteriorPointsBelongToIdentityCoset) {
    const auto& c = e12();
    const int window = window_for_argument(kPi, c.group.theta);
    for (const ConvexCell& cell : c.run.complex.cells) {
        const Vec3 p = cell.centroid();
        if (locate(c.run.complex, p).boundary_distance < 1e-4) continue;
        const GroupElement a = section_s(chart_lift(p));
        const auto wit = tiling_witnesses(c.group, c.run.atlas, a, window);
        ASSERT_EQ(wit.size(), 1u);
        EXPECT_EQ(wit[0].point, 0u);
        EXPECT_EQ(wit[0].m, 0);
        EXPECT_LT(norm(wit[0].chart - p), 1e-9);
        // the translate by rd reports the conjugate achiever
        const auto moved = tiling_witnesses(c.group, c.run.atlas, mul(c.group.rd, a), window);
        ASSERT_EQ(moved.size(), 1u);
        EXPECT_LT(element_distance(moved[0].g, c.group.rd), 1e-9);
        EXPECT_LT(norm(moved[0].chart - p), 1e-9);
    }
}

TEST(DomainCarver, Volumes) {
    EXPECT_EQ(chart_volume(PolyComplex{}), 0.0);
    EXPECT_EQ(invariant_volume(PolyComplex{}), 0.0);
    const auto& c = e12();
    EXPECT_NEAR(invariant_volume(c.run.complex), kPi * kPi / 84.0, 1e-7);
    EXPECT_NEAR(expected_invariant_volume(c.group), kPi * kPi / 84.0, 1e-15);

    const LiftedGroup five = lifted_group({3, 3, 5}, {0, 0, 0}, 2);
    const LiftedGroup three = lifted_group({3, 3, 5}, {0, 0, 0}, 0);
    const double v5 = invariant_volume(carve_adaptive(five).complex);
    const double v3 = invariant_volume(carve_adaptive(three).complex);
    EXPECT_NEAR(v5 / v3, 1.0, 1e-6);
}

TEST(DomainCarver, RotationalSymmetry) {
    const auto& c = e12();
    const auto& cx = c.run.complex;
    EXPECT_LT(rotation_residual(cx, 2.0 * kPi / 7.0), 1e-6);
    EXPECT_LT(rotation_residual(cx, 2.0 * c.group.theta), 1e-6);
    EXPECT_GT(rotation_residual(cx, kPi / 7.0), 1e-3);
    EXPECT_TRUE(std::isfinite(reflection_residual(cx)));
}

TEST(DomainCarver, Deterministic) {
    const auto& c = e12();
    const PolyComplex again = carve(c.group, c.run.atlas);
    ASSERT_EQ(again.vertices.size(), c.run.complex.vertices.size());
    for (std::size_t i = 0; i < again.vertices.size(); ++i) EXPECT_EQ(again.vertices[i], c.run.complex.vertices[i]);
    ASSERT_EQ(again.faces.size(), c.run.complex.faces.size());
    for (std::size_t i = 0; i < again.faces.size(); ++i) EXPECT_EQ(again.faces[i].label.word, c.run.complex.faces[i].label.word);
}

TEST(DomainCarver, CutoffTooLarge) {
    const auto& g = e12().group;
    try {
        carve(g, orbit_enumerate(g, 0.85));
        FAIL() << "expected a certificate failure";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CutoffTooLarge);
    }
    EXPECT_THROW(carve_adaptive(g, 0.9, 0.8), Error);
    EXPECT_THROW(carve_adaptive(g, -1.0), Error);
    EXPECT_EQ(e12().run.tried_epsilons.front(), 0.1);
}

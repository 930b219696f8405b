#include <gtest/gtest.h>

#include <random>
#include <set>

#include "lfd/error.hpp"
#include "lfd/group_builder.hpp"

using namespace lfd;

namespace {

PseudoVector identity_vec() { return {0.0, 1.0}; }

// distance of the projection to +-identity in SU(1,1)
double distance_to_pm_identity(const GroupElement& g) {
    const PseudoVector v = project_pi(g);
    return std::min(vector_distance(v, identity_vec()), vector_distance(v, {0.0, -1.0}));
}

}  // namespace

TEST(GroupBuilder, RejectsNonHyperbolic) {
    EXPECT_THROW(build_triangle({2, 3, 6}), Error);
    EXPECT_THROW(build_triangle({2, 4, 4}), Error);
    EXPECT_THROW(build_triangle({3, 3, 3}), Error);
    EXPECT_FALSE((TriangleSignature{2, 3, 6}.is_hyperbolic()));
    EXPECT_TRUE((TriangleSignature{2, 3, 7}.is_hyperbolic()));
}

TEST(GroupBuilder, TriangleRelationsInSU11) {
    for (TriangleSignature s : {TriangleSignature{2, 3, 7}, {3, 3, 4}, {2, 4, 5}, {3, 3, 5}, {2, 3, 9}}) {
        const TrianglePlacement t = build_triangle(s);
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_LT(distance_to_pm_identity(power(t.rotations[i], s[i])), 1e-9) << s.to_string();
            EXPECT_LT(std::abs(mobius(t.rotations[i], t.vertices[i]) - t.vertices[i]), 1e-12);
        }
        EXPECT_LT(distance_to_pm_identity(mul(mul(t.rotations[0], t.rotations[1]), t.rotations[2])), 1e-9);
        EXPECT_LT(std::abs(t.vertices[0]), 1e-15);
        EXPECT_LT(std::abs(t.vertices[1].imag()), 1e-15);
        EXPECT_GT(t.vertices[1].real(), 0.0);
        EXPECT_GT(t.vertices[2].imag(), 0.0);
    }
}

TEST(GroupBuilder, TriangleAnglesFromHyperbolicTrigonometry) {
    // Angle at x2 between the geodesics to x1 and x3, measured after moving x2 to 0.
    const TriangleSignature s{2, 3, 7};
    const TrianglePlacement t = build_triangle(s);
    for (std::size_t i = 0; i < 3; ++i) {
        const GroupElement h = inverse(translation_to(t.vertices[i]));
        const Complex a = mobius(h, t.vertices[(i + 1) % 3]), b = mobius(h, t.vertices[(i + 2) % 3]);
        const double angle = std::abs(std::arg(a / b));
        EXPECT_NEAR(angle, kPi / s[i], 1e-12);
    }
}

TEST(GroupBuilder, CentralExponent) {
    const TrianglePlacement t = build_triangle({2, 3, 7});
    EXPECT_EQ(central_exponent(Word{}, t.rotations), 0);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(central_exponent(Word{{i, (i == 0 ? 2 : (i == 1 ? 3 : 7))}}, t.rotations), 1);
    EXPECT_THROW(central_exponent(Word{{0, 1}}, t.rotations), Error);
    // measured, and used consistently below
    const std::int64_t m = triangle_central_exponent({2, 3, 7});
    EXPECT_EQ(central_exponent(Word{{0, 1}, {1, 1}, {2, 1}}, t.rotations), m);
}

TEST(GroupBuilder, LevelFormula) {
    const LiftedGroup g = lifted_group({2, 3, 7}, {0, 0, 0});
    EXPECT_EQ(g.level, 1);
    EXPECT_NEAR(g.theta, kPi / 7.0, 1e-15);
    EXPECT_EQ(g.p, 7);

    const std::int64_t m = triangle_central_exponent({3, 3, 5});
    EXPECT_EQ(level_for_offsets({3, 3, 5}, {1, 1, 1}, m), std::gcd(std::gcd(std::gcd(4, 4), 6), static_cast<int>(m + 3)));
}

TEST(GroupBuilder, RelationResiduals) {
    for (const auto& [sig, off] : std::vector<std::pair<TriangleSignature, Offsets>>{
             {{2, 3, 7}, {0, 0, 0}}, {{3, 3, 5}, {1, 1, 1}}, {{3, 3, 5}, {-1, -1, -1}}, {{2, 4, 5}, {2, -1, 0}}}) {
        const LiftedGroup g = lifted_group(sig, off);
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_LT(element_distance(power(g.generators[i], sig[i]), central_power(1 + sig[i] * off[i])), 1e-9);
        const GroupElement prod = mul(mul(g.generators[0], g.generators[1]), g.generators[2]);
        EXPECT_LT(element_distance(prod, central_power(g.triangle_exponent + off[0] + off[1] + off[2])), 1e-9);
        EXPECT_GT(g.p, g.level);
        EXPECT_EQ(std::gcd(g.p, g.level), 1);
        // rd = G_u^a z0^b and it rotates by 2 theta about u = 0
        const GroupElement rd = mul(power(g.generators[static_cast<std::size_t>(g.fixed_vertex)], g.rd_gen_power),
                                    central_power(g.rd_central_power));
        EXPECT_LT(element_distance(rd, g.rd), 1e-9);
        EXPECT_LT(element_distance(g.rd, rotation_r0(2.0 * g.theta)), 1e-12);
    }
}

TEST(GroupBuilder, FindLiftOffsets) {
    EXPECT_EQ(find_lift_offsets({2, 3, 7}, 1, 2), (Offsets{0, 0, 0}));
    const auto two = find_lift_offsets({3, 3, 5}, 2, 2);
    ASSERT_TRUE(two.has_value());
    EXPECT_EQ(lifted_group({3, 3, 5}, *two).level, 2);
    EXPECT_FALSE(find_lift_offsets({2, 3, 9}, 3, 20).has_value());
}

TEST(GroupBuilder, LevelCertificate) {
    for (const auto& [sig, level] : std::vector<std::pair<TriangleSignature, int>>{
             {{2, 3, 7}, 1}, {{3, 3, 4}, 1}, {{3, 3, 5}, 2}}) {
        const auto off = find_lift_offsets(sig, level, 3);
        ASSERT_TRUE(off.has_value());
        const LiftedGroup g = lifted_group(sig, *off);
        ASSERT_EQ(g.level, level);
        const GroupElement w = evaluate_word(central_witness(g), g.generators);
        EXPECT_LT(element_distance(w, central_power(level)), 1e-6);
        const auto found = central_exponents_within(g, 6);
        bool reached = false;
        for (std::int64_t e : found) {
            EXPECT_EQ(e % level, 0) << "z0^" << e;
            if (std::abs(e) == level) reached = true;
        }
        EXPECT_TRUE(reached);
    }
}

TEST(GroupBuilder, NoAdmissibleFixedPoint) {
    // (3,3,6) at level 3 would need an order > 3 coprime to 3.
    const auto off = find_lift_offsets({3, 3, 6}, 3, 4);
    if (off) EXPECT_THROW(lifted_group({3, 3, 6}, *off), Error);
    EXPECT_THROW(lifted_group({2, 3, 7}, {0, 0, 0}, 3), Error);
    EXPECT_NO_THROW(lifted_group({2, 3, 7}, {0, 0, 0}, 0));
}

TEST(GroupBuilder, OrbitAtlas) {
    const LiftedGroup g = lifted_group({2, 3, 7}, {0, 0, 0});
    EXPECT_THROW(orbit_enumerate(g, 0.0), Error);
    const OrbitAtlas a = orbit_enumerate(g, 0.1);
    ASSERT_FALSE(a.points.empty());
    EXPECT_LT(std::abs(a.points[0].x), 1e-15);
    EXPECT_LT(element_distance(a.points[0].rep, GroupElement::identity()), 1e-12);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const OrbitPoint& p = a.points[i];
        EXPECT_GT(p.f, 0.1);
        EXPECT_LT(std::abs(orbit_point(p.rep) - p.x), 1e-9);
        EXPECT_LT(element_distance(evaluate_word(p.word, g.generators), p.word_value), 1e-6);
        EXPECT_LE(std::abs(p.rep.alpha), g.theta / 2.0 + 1e-9);
        if (i > 0) EXPECT_LE(std::abs(a.points[i - 1].x), std::abs(p.x) + 1e-9);
    }
    std::set<std::pair<long long, long long>> keys;
    for (const auto& p : a.points) keys.insert({std::llround(p.x.real() * 1e6), std::llround(p.x.imag() * 1e6)});
    EXPECT_EQ(keys.size(), a.points.size());
    // the first ring has p-fold symmetry
    EXPECT_NEAR(std::abs(a.points[1].x), std::abs(a.points[7].x), 1e-12);
}

TEST(GroupBuilder, CosetOracle) {
    const LiftedGroup g = lifted_group({2, 3, 7}, {0, 0, 0});
    const OrbitAtlas a = orbit_enumerate(g, 0.1);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> gen(0, 2), pw(-2, 2);
    int hits = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Word w;
        for (int i = 0; i < 6; ++i) append_letter(w, {gen(rng), pw(rng)});
        const GroupElement v = evaluate_word(w, g.generators);
        const auto idx = a.find(orbit_point(v));
        if (!idx) continue;
        ++hits;
        const GroupElement rest = mul(inverse(a.points[*idx].rep), v);
        const double j = -rest.alpha / g.theta;
        EXPECT_LT(std::abs(rest.z), 1e-7);
        EXPECT_NEAR(j, std::round(j), 1e-7);
        EXPECT_LT(element_distance(rest, power(g.rd, std::llround(j))), 1e-7);
    }
    EXPECT_GT(hits, 100);
}

TEST(GroupBuilder, AtlasDeterministicAndNested) {
    const LiftedGroup g = lifted_group({3, 3, 4}, {0, 0, 0});
    const OrbitAtlas a = orbit_enumerate(g, 0.2), b = orbit_enumerate(g, 0.2), c = orbit_enumerate(g, 0.1);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].x, b.points[i].x);
        EXPECT_EQ(a.points[i].label(), b.points[i].label());
        EXPECT_TRUE(c.find(a.points[i].x).has_value());
    }
    EXPECT_GT(c.points.size(), a.points.size());
}

#include <gtest/gtest.h>

#include <array>
#include <random>

#include "lfd/cover_group.hpp"
#include "lfd/error.hpp"

using namespace lfd;

namespace {

// SU(1,1) matrices [[a, b], [conj b, conj a]] stored directly; (z, w) = (b, conj a).
using Mat = std::array<Complex, 4>;

Mat to_matrix(const PseudoVector& v) { return {std::conj(v.w), v.z, std::conj(v.z), v.w}; }

Mat matmul(const Mat& a, const Mat& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

double mat_dist(const Mat& a, const Mat& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

GroupElement random_element(std::mt19937_64& rng, double max_abs = 0.95, double max_alpha = 6.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Complex z;
    do z = {u(rng), u(rng)};
    while (std::abs(z) > max_abs);
    const Complex zz = z / std::sqrt(1.0 - std::norm(z));  // |zz| unbounded
    return {zz, max_alpha * u(rng), std::sqrt(1.0 + std::norm(zz))};
}

}  // namespace

TEST(CoverGroup, BilinearFormExamples) {
    EXPECT_DOUBLE_EQ(bilinear_form({0.0, 1.0}, {0.0, 1.0}), -1.0);
    EXPECT_DOUBLE_EQ(bilinear_form({1.0, 0.0}, {1.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(bilinear_form({Complex{0, 1}, 0.0}, {0.0, 1.0}), 0.0);
}

TEST(CoverGroup, ProjectPi) {
    const auto a = project_pi({0.0, 0.0, 1.0});
    EXPECT_NEAR(std::abs(a.w - 1.0), 0.0, 1e-15);
    const auto b = project_pi({0.0, -kPi, 1.0});
    EXPECT_NEAR(std::abs(b.w + 1.0), 0.0, 1e-15);
    const auto c = project_pi({0.5, kPi / 3.0, 2.0});
    EXPECT_NEAR(std::abs(c.w - Complex(1.0, std::sqrt(3.0))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(c.z - 0.5), 0.0, 1e-15);
}

TEST(CoverGroup, SectionIsIdempotentRadialProjection) {
    const auto s = section_s({0.0, 0.0, 2.0});
    EXPECT_NEAR(s.r, 1.0, 1e-15);
    const auto t = section_s({3.0, 0.0, 5.0});
    EXPECT_NEAR(t.z.real(), 0.75, 1e-15);
    EXPECT_NEAR(t.r, 1.25, 1e-15);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const GroupElement g = random_element(rng);
        const CoverPoint a = scale(g, 0.3 + i * 0.01);
        const GroupElement s1 = section_s(a), s2 = section_s(s1);
        EXPECT_LT(element_distance(s1, s2), 1e-12);
        const PseudoVector lin = radial_projection(project_pi(a));
        EXPECT_LT(vector_distance(lin, project_pi(s1)), 1e-12);
    }
}

TEST(CoverGroup, RotationHomomorphism) {
    EXPECT_LT(element_distance(rotation_r0(0.0), GroupElement::identity()), 1e-15);
    EXPECT_LT(element_distance(rotation_r0(2.0 * kPi), GroupElement{0.0, -kPi, 1.0}), 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double s = u(rng), t = u(rng);
        EXPECT_LT(element_distance(mul(rotation_r0(s), rotation_r0(t)), rotation_r0(s + t)), 1e-12);
    }
}

TEST(CoverGroup, AssociativityAndProjectionHomomorphism) {
    std::mt19937_64 rng(11);
    double assoc = 0.0, hom = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GroupElement a = random_element(rng, 0.9), b = random_element(rng, 0.9), c = random_element(rng, 0.9);
        assoc = std::max(assoc, element_distance(mul(mul(a, b), c), mul(a, mul(b, c))));
        const Mat lhs = to_matrix(project_pi(mul(a, b)));
        const Mat rhs = matmul(to_matrix(project_pi(a)), to_matrix(project_pi(b)));
        hom = std::max(hom, mat_dist(lhs, rhs) / (1.0 + std::abs(rhs[0])));
    }
    EXPECT_LT(assoc, 1e-9);
    EXPECT_LT(hom, 1e-9);
}

TEST(CoverGroup, CorrectionTermStaysInsideQuarterTurns) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        const GroupElement a = random_element(rng), b = random_element(rng);
        const double c = mul(a, b).alpha - a.alpha - b.alpha;
        EXPECT_LT(std::abs(c), kPi / 2.0);
    }
}

TEST(CoverGroup, InverseMatchesMatrixInverse) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
        const GroupElement g = random_element(rng);
        EXPECT_LT(element_distance(mul(g, inverse(g)), GroupElement::identity()), 1e-9);
        const Mat m = to_matrix(project_pi(g));
        const Mat inv{m[3], -m[1], -m[2], m[0]};
        EXPECT_LT(mat_dist(to_matrix(project_pi(inverse(g))), inv), 1e-12 * (1.0 + std::abs(m[0])));
    }
    const GroupElement t{0.0, -0.7, 1.0};
    EXPECT_LT(element_distance(inverse(t), GroupElement{0.0, 0.7, 1.0}), 1e-15);
}

TEST(CoverGroup, ActionIsEquivariantAndCompatible) {
    std::mt19937_64 rng(19);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GroupElement g = random_element(rng, 0.9), h = random_element(rng, 0.9);
        const CoverPoint a = scale(random_element(rng, 0.9), 1.7);
        const PseudoVector lhs = project_pi(act(g, a));
        const PseudoVector rhs = su11_apply(project_pi(g), project_pi(a));
        worst = std::max(worst, vector_distance(lhs, rhs) / (1.0 + std::abs(rhs.w)));
        const CoverPoint x = act(mul(g, h), a), y = act(g, act(h, a));
        EXPECT_NEAR(x.alpha, y.alpha, 1e-9);
    }
    EXPECT_LT(worst, 1e-9);
    const CoverPoint a{Complex(0.3, 0.1), 0.4, 1.5};
    const CoverPoint b = act(rotation_r0(2.0 * 0.25), a);
    EXPECT_LT(std::abs(b.z - a.z * std::polar(1.0, 0.25)), 1e-14);
    EXPECT_NEAR(b.alpha, a.alpha - 0.25, 1e-14);
    EXPECT_NEAR(b.r, a.r, 1e-14);
}

TEST(CoverGroup, RotationAboutPoint) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        Complex x;
        do x = {0.9 * u(rng), 0.9 * u(rng)};
        while (std::abs(x) > 0.9);
        EXPECT_LT(element_distance(rotation_rx(x, 2.0 * kPi), central_power(1)), 1e-9);
        const GroupElement r = rotation_rx(x, 1.234);
        EXPECT_LT(std::abs(mobius(r, x) - x), 1e-12);
    }
    EXPECT_LT(element_distance(rotation_rx(0.0, 0.8), rotation_r0(0.8)), 1e-15);
    EXPECT_THROW(rotation_rx(Complex(1.0, 0.0), 1.0), Error);
}

TEST(CoverGroup, Centre) {
    EXPECT_LT(element_distance(central_power(0), GroupElement::identity()), 1e-15);
    EXPECT_LT(element_distance(central_power(1), GroupElement{0.0, -kPi, 1.0}), 1e-15);
    const PseudoVector two = project_pi(central_power(2));
    EXPECT_LT(std::abs(two.w - 1.0), 1e-12);
    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
        const GroupElement g = random_element(rng);
        const GroupElement c = central_power(i % 7 - 3);
        EXPECT_LT(element_distance(mul(c, g), mul(g, c)), 1e-12);
    }
    EXPECT_TRUE(is_central(central_power(3)));
    EXPECT_FALSE(is_central(rotation_r0(0.5)));
}

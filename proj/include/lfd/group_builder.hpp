#pragma once

// Hyperbolic triangle groups in PSU(1,1), their lifts to the universal cover
// with prescribed central offsets, the level of the lift, and the orbit of the
// chosen fixed point together with one coset representative per orbit point.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfd/cover_group.hpp"

namespace lfd {

struct TriangleSignature {
    int alpha1 = 2;
    int alpha2 = 3;
    int alpha3 = 7;

    int operator[](std::size_t i) const { return i == 0 ? alpha1 : (i == 1 ? alpha2 : alpha3); }
    /// 1 - 1/a1 - 1/a2 - 1/a3; positive exactly for hyperbolic signatures.
    double defect() const { return 1.0 - 1.0 / alpha1 - 1.0 / alpha2 - 1.0 / alpha3; }
    bool is_hyperbolic() const;
    std::string to_string() const;

    friend bool operator==(const TriangleSignature&, const TriangleSignature&) = default;
};

using Offsets = std::array<std::int64_t, 3>;

/// One letter of a word in the three generators: G_gen^power.
struct Letter {
    int gen = 0;
    std::int64_t power = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Appends a letter, merging with the last one when the generator repeats.
void append_letter(Word& word, Letter letter);
std::string word_to_string(const Word& word);
GroupElement evaluate_word(const Word& word, const std::array<GroupElement, 3>& gens);

/// Vertex placement and the (unlifted) rotation generators of a triangle group.
struct TrianglePlacement {
    TriangleSignature signature;
    std::array<Complex, 3> vertices{};
    /// +1 when counter-clockwise rotations through 2 pi / alpha_i satisfy g1 g2 g3 = 1.
    int orientation = 1;
    /// Lifts r_{x_i}(orientation * 2 pi / alpha_i) of the rotation generators.
    std::array<GroupElement, 3> rotations{};
};

TrianglePlacement build_triangle(const TriangleSignature& signature);

/// For a word projecting to the identity of PSU(1,1), the integer m with
/// value = (0, -m pi, 1).
std::int64_t central_exponent(const Word& word, const std::array<GroupElement, 3>& gens);

struct LiftedGroup {
    TriangleSignature signature;
    Offsets offsets{};
    int orientation = 1;
    /// Vertices after conjugating the fixed point to the origin.
    std::array<Complex, 3> vertices{};
    /// Lifted generators G_i = r_{x_i}(2 pi / alpha_i) z0^{s_i}, conjugated likewise.
    std::array<GroupElement, 3> generators{};
    /// Central exponents of the relators G_i^{alpha_i} and G1 G2 G3.
    std::array<std::int64_t, 4> relator_exponents{};
    /// Central exponent of the zero-offset product g1 g2 g3.
    std::int64_t triangle_exponent = 0;
    int level = 1;
    /// Index (0..2) of the vertex used as the fixed point u.
    int fixed_vertex = 0;
    int p = 0;
    double theta = 0.0;
    /// Generator of the isotropy group of u = 0: r_u(2 theta) = (0, -theta, 1).
    GroupElement rd;
    /// r_d = G_u^{rd_gen_power} * z0^{rd_central_power}.
    std::int64_t rd_gen_power = 0;
    std::int64_t rd_central_power = 0;

    /// Relator words G1^a1, G2^a2, G3^a3, G1 G2 G3.
    std::array<Word, 4> relators() const;
};

/// gcd of the relator exponents for the given offsets. Zero offsets give
/// the values (1, 1, 1, m).
int level_for_offsets(const TriangleSignature& signature, const Offsets& offsets,
                      std::int64_t triangle_exponent);

/// Measured central exponent m of the zero-offset product g1 g2 g3.
std::int64_t triangle_central_exponent(const TriangleSignature& signature);

/// Vertex choice: -1 picks the admissible vertex of largest order.
LiftedGroup lifted_group(const TriangleSignature& signature, const Offsets& offsets,
                         int fixed_vertex = -1);

/// Exhaustive search over [-bound, bound]^3, ordered by L1 norm then
/// lexicographically, for offsets realizing `level`. nullopt means unrealizable.
std::optional<Offsets> find_lift_offsets(const TriangleSignature& signature, int level,
                                         int bound);

/// A word in the relators whose value is z0^k, built from Bezout coefficients.
Word central_witness(const LiftedGroup& group);

/// Central exponents of all group elements with word length <= depth.
std::vector<std::int64_t> central_exponents_within(const LiftedGroup& group, int depth);

struct OrbitPoint {
    Complex x;
    /// First-found BFS word and its value in G~.
    Word word;
    GroupElement word_value;
    /// rep = word_value * rd^{rd_shift}, normalized so |arg| <= theta/2.
    std::int64_t rd_shift = 0;
    GroupElement rep;
    /// f(|x|) = sqrt(1 - |x|^2) / cos(theta/2).
    double f = 0.0;

    std::string label() const;
};

struct OrbitAtlas {
    double epsilon = 0.0;
    double theta = 0.0;
    /// Sorted by (|x|, arg x); the first entry is u = 0 with rep e.
    std::vector<OrbitPoint> points;

    std::optional<std::size_t> find(Complex x, double tol = 1e-7) const;
};

/// Prism bound f(t) = sqrt(1 - t^2) / cos(theta / 2).
double prism_bound(double t, double theta);

/// Disk-distance tolerance used to identify orbit points.
inline constexpr double kOrbitDedupTol = 1e-7;

OrbitAtlas orbit_enumerate(const LiftedGroup& group, double epsilon);

}  // namespace lfd

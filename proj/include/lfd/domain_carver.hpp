#pragma once

// The fundamental polyhedron F_e in the flat chart of E_e: the wedge slab
// |t| <= tan(theta/2) minus the interiors of all other prisms Q_x, carved as a
// union of convex cells. Also face pairings, tiling checks, volumes and the
// Euclideanized boundary mesh.

#include <array>
#include <cstdint>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include "lfd/group_builder.hpp"
#include "lfd/halfspaces.hpp"
#include "lfd/polytope.hpp"

namespace lfd {

/// What a bounding plane of F_e comes from.
struct CutterLabel {
    enum class Kind { Wedge, Prism, Box };
    Kind kind = Kind::Prism;
    /// Atlas index of the orbit point (0 = u for wedge planes).
    std::size_t point = 0;
    /// Window index m for the element rep(x) * rd^m.
    int m = 0;
    GroupElement g;
    std::string word;

    /// (kind, point, m) as an ordering/identity key.
    std::tuple<int, std::size_t, int> key() const { return {static_cast<int>(kind), point, m}; }
};

/// An affine half-space of the chart (the I-side of E_g) with its label.
struct Cutter {
    Plane half_space;
    CutterLabel label;
};

/// The I-side of E_g in the chart: <pi(g), (z, 1 + i t)> <= -1. Empty for g = e.
std::optional<Plane> chart_half_space(const GroupElement& g);

/// Wedge planes t = +-tan(theta/2) plus, for each orbit point x != u and each
/// window index, the half-space of rep(x) rd^m.
std::vector<Cutter> cutter_set(const LiftedGroup& group, const OrbitAtlas& atlas, int window);

struct Face {
    CutterLabel label;
    int plane_id = -1;
    Vec3 outward;
    /// Convex pieces, counter-clockwise about the outward normal.
    std::vector<std::vector<Vec3>> pieces;
    /// Turning points of the face boundary.
    std::vector<Vec3> corners;
    double area = 0.0;
};

struct PolyComplex {
    double theta = 0.0;
    double slab = 0.0;
    PlaneRegistry registry;
    std::vector<ConvexCell> cells;
    std::vector<Face> faces;
    /// Corners of the boundary (points where the face boundaries turn).
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 2>> edges;
    /// Number of connected face patches.
    int face_patches = 0;
    int components = 0;
    /// min over F_e of |w| - |z|.
    double min_margin = 0.0;
    std::size_t prisms_used = 0;

    /// Welded boundary points and the boundary pieces as index loops, with
    /// T-junctions split so that neighbouring pieces share whole edges.
    std::vector<Vec3> boundary_points;
    std::vector<std::vector<int>> boundary_loops;
    std::vector<int> loop_face;

    int euler_characteristic() const {
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + face_patches;
    }
    std::optional<std::size_t> face_index(const CutterLabel& label) const;
};

struct CarveOptions {
    /// Window half-width; 0 selects window_for_argument(theta/2, theta).
    int window = 0;
    double snap = 1e-7;
    double sliver_area = 1e-12;
};

/// Carves F_e with the prisms of `atlas`. Throws CutoffTooLarge when the
/// stability certificate fails: some part of the result has margin <= epsilon,
/// so a prism beyond the cutoff could still cut it.
PolyComplex carve(const LiftedGroup& group, const OrbitAtlas& atlas, const CarveOptions& options = {});

struct CarveRun {
    OrbitAtlas atlas;
    PolyComplex complex;
    std::vector<double> tried_epsilons;
};

/// Starts at epsilon0 and halves until the certificate passes; gives up below floor.
CarveRun carve_adaptive(const LiftedGroup& group, double epsilon0 = 0.1, double floor = 1e-3,
                        const CarveOptions& options = {});

/// Exact pointwise test for F_e using the atlas prisms.
bool in_fundamental_domain(const LiftedGroup& group, const OrbitAtlas& atlas, const Vec3& c,
                           double tol = kGeomTol);

/// Point location in the carved complex.
struct Location {
    bool inside = false;
    /// Distance to the nearest boundary piece.
    double boundary_distance = 0.0;
};
Location locate(const PolyComplex& complex, const Vec3& c, double tol = 1e-9);

/// Maps a chart point by a group element and returns the chart point of the image,
/// which must lie on E_e.
std::optional<Vec3> map_chart_point(const GroupElement& g, const Vec3& c, double tol = 1e-7);

struct PairingEntry {
    std::size_t face = 0;
    std::size_t partner = 0;
    /// Carries `face` onto `partner`: the inverse of the face label.
    GroupElement mapping;
    double residual = 0.0;
    /// One matched flag: vertex, a second vertex on an edge through it, their images.
    std::array<Vec3, 2> flag{};
    std::array<Vec3, 2> flag_image{};
};

struct FacePairing {
    std::vector<PairingEntry> entries;
    std::vector<std::size_t> unmatched;
    bool is_involution() const;
};

/// Matches each face with label g against the face labelled g^-1 by applying g^-1.
FacePairing face_pairing(const LiftedGroup& group, const OrbitAtlas& atlas, const PolyComplex& complex,
                         double tol = 1e-6);

struct TilingReport {
    std::size_t samples = 0;
    std::size_t covered = 0;
    std::size_t double_interior = 0;
    std::size_t max_achievers = 0;
};

struct TilingOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    double max_abs_z = 1.0;
    double max_abs_alpha = kPi;
    double shell = 1e-7;
};

/// For each sampled a in G~ finds the boundary point of P over a, pulls it back by
/// every binding element and checks it against F_e.
TilingReport verify_tiling(const LiftedGroup& group, const OrbitAtlas& atlas, const PolyComplex& complex,
                           const TilingOptions& options = {});

/// Elements g with the boundary point over a lying in g E_e, and the pulled-back
/// chart points.
struct CoverWitness {
    GroupElement g;
    std::size_t point = 0;
    int m = 0;
    Vec3 chart;
};
std::vector<CoverWitness> tiling_witnesses(const LiftedGroup& group, const OrbitAtlas& atlas,
                                           const GroupElement& a, int window);

/// Euclidean volume of the cells in the chart.
double chart_volume(const PolyComplex& complex);
/// Haar volume of the projection of F_e to G~: the integral of (1 + t^2 - |z|^2)^-2.
double invariant_volume(const PolyComplex& complex);
/// Haar covolume of a level-k triangle group: (pi^2 / 2) k (1 - sum 1/alpha_i).
double expected_invariant_volume(const LiftedGroup& group);

/// Hausdorff distance between the vertex set and its rotation about the t-axis.
double rotation_residual(const PolyComplex& complex, double angle);
/// Best Hausdorff residual over reflections z -> e^{i phi} conj(z), t -> +-t.
double reflection_residual(const PolyComplex& complex);

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    /// Face index (into PolyComplex::faces) of each triangle.
    std::vector<int> triangle_face;

    bool is_closed() const;
    int euler_characteristic() const;
};

/// Reinterprets the chart metric diag(1, 1, -1) as Euclidean and triangulates the
/// boundary, oriented outward.
Mesh euclideanize(const PolyComplex& complex, double snap = 1e-7);

}  // namespace lfd

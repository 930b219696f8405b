#pragma once

// The lifted half-spaces E_g, I_g, H_g of L~, the prisms Q_x and their
// fibre sections, and the flat chart of E_e.

#include <limits>
#include <vector>

#include "lfd/cover_group.hpp"
#include "lfd/group_builder.hpp"
#include "lfd/vec3.hpp"

namespace lfd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct HalfSpaceHandle {
    GroupElement g;
};

/// Closed membership in I_g: b = g^-1 a has |arg| < pi/2 and r cos(arg) >= 1 - tol.
bool in_I(const HalfSpaceHandle& h, const CoverPoint& a, double tol = kGeomTol);
/// Closed membership in H_g: r cos(arg) <= 1 + tol or |arg| >= pi/2.
bool in_H(const HalfSpaceHandle& h, const CoverPoint& a, double tol = kGeomTol);
bool on_E(const HalfSpaceHandle& h, const CoverPoint& a, double tol = kGeomTol);

/// The quantity r cos(arg) of g^-1 a and its argument; E_g is {value = 1, |arg| < pi/2}.
struct TangencyValue {
    double value = 0.0;
    double alpha = 0.0;
    bool in_window() const { return std::abs(alpha) < kPi / 2.0; }
};
TangencyValue tangency(const GroupElement& g, const CoverPoint& a);

/// A point of the flat chart of E_e: w = 1 + i t.
struct ChartPoint {
    Complex z;
    double t = 0.0;

    Vec3 to_vec3() const { return {z.real(), z.imag(), t}; }
    static ChartPoint from_vec3(const Vec3& v) { return {Complex{v.x, v.y}, v.z}; }
};

/// The linear image (z, 1 + i t) of a chart point in E^{2,2}.
inline PseudoVector embed(const ChartPoint& c) { return {c.z, Complex{1.0, c.t}}; }
/// |z|^2 < 1 + t^2.
inline bool chart_in_cone(const ChartPoint& c) { return std::norm(c.z) < 1.0 + c.t * c.t; }
/// |w| - |z| for the embedded point; positive inside the cone.
inline double chart_margin(const ChartPoint& c) {
    return std::sqrt(1.0 + c.t * c.t) - std::abs(c.z);
}

ChartPoint chart_to(const CoverPoint& a, double tol = kGeomTol);
CoverPoint chart_from(const ChartPoint& c);

/// Lifts an arbitrary E^{2,2} point of the affine plane Re w = 1 with |z| < |w|.
inline CoverPoint chart_lift(const Vec3& v) { return chart_from(ChartPoint::from_vec3(v)); }

/// M = ceil((A + pi) / theta) + 1: covers every binding constraint for queries
/// with |arg| <= A when the representative has |arg| <= theta / 2.
int window_for_argument(double max_abs_alpha, double theta);

enum class PrismSide { Interior, Boundary, Exterior };

struct PrismHandle {
    Complex x;
    GroupElement rep;
    GroupElement rd;
    double theta = 0.0;
    int window = 0;

    /// The group element rep * rd^m labelling the m-th half-space.
    GroupElement element(int m) const;
};

PrismHandle make_prism(const LiftedGroup& group, const OrbitPoint& point, int window);

PrismSide prism_membership(const PrismHandle& q, const CoverPoint& a, double tol = kGeomTol);

struct SectionValue {
    double value = kInfinity;
    /// Window index of the binding half-space (meaningless when value is infinite).
    int binding = 0;
};

/// sup of fibre heights over a that stay inside Q_x.
SectionValue prism_section_detail(const PrismHandle& q, const GroupElement& a);
inline double prism_section(const PrismHandle& q, const GroupElement& a) {
    return prism_section_detail(q, a).value;
}

struct Achiever {
    std::size_t point = 0;
    int m = 0;
};

struct BoundarySection {
    double value = 0.0;
    std::vector<Achiever> achievers;
};

/// r_P(a) = max over atlas prisms of their sections, with every prism
/// attaining the maximum up to a relative tolerance.
BoundarySection boundary_section(const LiftedGroup& group, const OrbitAtlas& atlas,
                                 const GroupElement& a, int window, double tie_tol = 1e-9);

/// Vertices of the star polygon pi(boundary of X_u) in traversal order:
/// 2p of them for odd k, p for even k, at radius 1 / cos(theta / 2).
std::vector<Complex> star_polygon(int p, int k);

}  // namespace lfd

#pragma once

// Convex cells in R^3 as boundary representations, split by shared planes.

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lfd/vec3.hpp"

namespace lfd {

/// The half-space n . x <= d; n has unit length.
struct Plane {
    Vec3 n;
    double d = 0.0;

    double signed_distance(const Vec3& x) const { return dot(n, x) - d; }
    static Plane through(const Vec3& normal, double offset);
};

/// Planes deduplicated geometrically; each id is stored in a canonical orientation.
class PlaneRegistry {
public:
    struct Oriented {
        int id = -1;
        /// +1 when the requested half-space is the canonical n . x <= d side.
        int side = 1;
    };

    Oriented add(const Plane& half_space, double tol = 1e-12);
    const Plane& plane(int id) const { return planes_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return planes_.size(); }

private:
    std::vector<Plane> planes_;
};

struct Facet {
    int plane_id = -1;
    /// +1 if the cell lies on the canonical n . x <= d side of the plane.
    int side = 1;
    /// Counter-clockwise seen from outside the cell.
    std::vector<int> loop;
};

struct ConvexCell {
    std::vector<Vec3> vertices;
    std::vector<Facet> facets;

    Vec3 centroid() const;
    double volume() const;
    bool contains(const Vec3& x, const PlaneRegistry& reg, double tol = 1e-12) const;
    Vec3 outward_normal(const Facet& f, const PlaneRegistry& reg) const;
    std::vector<Vec3> facet_polygon(const Facet& f) const;

    /// Tetrahedra (reference point + facet fans) covering the cell.
    std::vector<std::array<Vec3, 4>> tetrahedra() const;
};

/// Axis-aligned box as a cell; the six facets get ids from the registry.
ConvexCell make_box(const Vec3& lo, const Vec3& hi, PlaneRegistry& reg);

/// Cell from a list of half-spaces bounding a region known to be inside `box`.
ConvexCell clip_box(const Vec3& lo, const Vec3& hi, const std::vector<Plane>& half_spaces,
                    PlaneRegistry& reg);

/// Result of cutting a cell: the part on the n . x <= d side of the canonical plane
/// and the part on the other side. Either may be empty.
struct SplitResult {
    std::optional<ConvexCell> below;
    std::optional<ConvexCell> above;
};

SplitResult split_cell(const ConvexCell& cell, int plane_id, const PlaneRegistry& reg,
                       double tol = 1e-11);

/// Keeps the part of the cell on the given side of the plane.
std::optional<ConvexCell> clip_cell(const ConvexCell& cell, PlaneRegistry::Oriented half,
                                    const PlaneRegistry& reg, double tol = 1e-11);

/// Grundmann-Moeller rule of degree 2s+1 on a tetrahedron.
double integrate_tetrahedron(const std::array<Vec3, 4>& tet, const std::function<double(const Vec3&)>& f,
                             int s = 3);

double tetrahedron_volume(const std::array<Vec3, 4>& tet);

/// Polygon helpers on a plane: 2D coordinates (u, v) with an orthonormal frame.
struct PlaneFrame {
    Vec3 origin;
    Vec3 u;
    Vec3 v;
    Vec3 n;

    static PlaneFrame from_normal(const Vec3& normal, const Vec3& origin);
    std::pair<double, double> project(const Vec3& x) const {
        const Vec3 d = x - origin;
        return {dot(d, u), dot(d, v)};
    }
    Vec3 lift(double a, double b) const { return origin + u * a + v * b; }
};

using Polygon2 = std::vector<std::pair<double, double>>;

double polygon_area(const Polygon2& poly);
/// Clips a convex polygon to a x + b y <= c.
Polygon2 clip_polygon(const Polygon2& poly, double a, double b, double c, double tol = 1e-12);
/// Convex polygon minus convex polygon, as a list of convex pieces.
std::vector<Polygon2> subtract_convex(const Polygon2& poly, const Polygon2& hole, double tol = 1e-12);

/// Distance from a point to a convex planar polygon in space.
double point_polygon_distance(const Vec3& x, const std::vector<Vec3>& polygon);

}  // namespace lfd

#pragma once

// The two planar toy versions of the construction: the rotation group of order
// m acting on the Euclidean plane, and a cyclic group of boosts acting on the
// Minkowski plane E^{1,1}.

#include <array>
#include <vector>

namespace lfd {

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

/// a1 b1 + a2 b2
double euclidean_form(const PlanePoint& a, const PlanePoint& b);
/// a1 b1 - a2 b2
double minkowski_form(const PlanePoint& a, const PlanePoint& b);

struct Arc {
    double start = 0.0;
    double end = 0.0;
    double length() const { return end - start; }
};

struct So2Domain {
    int m = 0;
    /// Vertices of the m-gon, counter-clockwise, vertex k between faces k and k+1.
    std::vector<PlanePoint> vertices;
    /// Face k lies on <a, g_k> = 1 with g_k = (cos 2 pi k/m, sin 2 pi k/m); its arc
    /// on the unit circle under a -> a / |a|.
    std::vector<Arc> arcs;
};

/// Intersection of {<a, g> <= 1} over the rotations of order m. Throws for m <= 2,
/// where the intersection is unbounded.
So2Domain so2_domain(int m);

/// z(s, eps) = eps (sinh s, cosh s) on the hyperbola <a, a> = -1.
PlanePoint hyperbola_point(double s, int eps = 1);
/// Boost by s: maps z(t) to z(t + s).
PlanePoint boost(const PlanePoint& a, double s);
/// a / sqrt(-<a, a>) read back as the hyperbola parameter.
double hyperbola_parameter(const PlanePoint& a);

struct So11Face {
    int k = 0;
    std::array<PlanePoint, 2> ends{};
    /// Parameter interval of the projected face.
    Arc image;
};

struct So11Domain {
    double d = 0.0;
    int n = 0;
    /// Corners of the boundary polyline on the upper sheet, ordered by parameter.
    std::vector<PlanePoint> vertices;
    /// Faces |k| <= n - 1; the outermost faces are cut off by the truncation.
    std::vector<So11Face> faces;
    /// The naive intersection of every H_g with |k| <= n, as a convex polygon.
    std::vector<PlanePoint> full_intersection;
    double full_intersection_diameter = 0.0;
};

/// P = union over |k| <= n of the strips {|<a, z(kd)>| <= 1}.
So11Domain so11_domain(double d, int n);

}  // namespace lfd

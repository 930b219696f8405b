#include "lfd/analogues.hpp"

#include <cmath>
#include <numbers>

#include "lfd/error.hpp"
#include "lfd/polytope.hpp"

namespace lfd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Intersection of the lines a1 x + b1 y = c1 and a2 x + b2 y = c2.
PlanePoint meet(double a1, double b1, double c1, double a2, double b2, double c2) {
    const double det = a1 * b2 - a2 * b1;
    if (std::abs(det) < 1e-300) throw Error(ErrorKind::InvalidArgument, "parallel lines");
    return {(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
}

}  // namespace

double euclidean_form(const PlanePoint& a, const PlanePoint& b) { return a.x * b.x + a.y * b.y; }
double minkowski_form(const PlanePoint& a, const PlanePoint& b) { return a.x * b.x - a.y * b.y; }

So2Domain so2_domain(int m) {
    if (m <= 2) throw Error(ErrorKind::InvalidArgument, "so2 domain is unbounded for m <= 2");
    So2Domain out;
    out.m = m;
    for (int k = 0; k < m; ++k) {
        const double a = kTwoPi * k / m, b = kTwoPi * (k + 1) / m;
        out.vertices.push_back(meet(std::cos(a), std::sin(a), 1.0, std::cos(b), std::sin(b), 1.0));
    }
    for (int k = 0; k < m; ++k) {
        const PlanePoint& lo = out.vertices[static_cast<std::size_t>((k + m - 1) % m)];
        const PlanePoint& hi = out.vertices[static_cast<std::size_t>(k)];
        double s = std::atan2(lo.y, lo.x), e = std::atan2(hi.y, hi.x);
        if (e < s) e += kTwoPi;
        out.arcs.push_back({s, e});
    }
    return out;
}

PlanePoint hyperbola_point(double s, int eps) { return {eps * std::sinh(s), eps * std::cosh(s)}; }

PlanePoint boost(const PlanePoint& a, double s) {
    return {a.x * std::cosh(s) + a.y * std::sinh(s), a.x * std::sinh(s) + a.y * std::cosh(s)};
}

double hyperbola_parameter(const PlanePoint& a) { return 0.5 * std::log((a.y + a.x) / (a.y - a.x)); }

So11Domain so11_domain(double d, int n) {
    if (!(d > 0.0)) throw Error(ErrorKind::InvalidArgument, "d must be positive");
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two branches");
    So11Domain out;
    out.d = d;
    out.n = n;
    // In null coordinates u = y + x, v = y - x the tangent line at z(s) reads
    // u e^-s + v e^s = 2, and neighbouring lines meet at u = e^{s'} / cosh(d/2),
    // v = e^{-s'} / cosh(d/2) with s' the mid parameter. Solving there avoids the
    // cancellation in y - x far out on the sheet.
    std::vector<std::pair<double, double>> null;
    for (int k = -n; k < n; ++k) {
        const double s1 = k * d, s2 = (k + 1) * d;
        const double det = 2.0 * std::sinh(s2 - s1);
        const double u = 2.0 * std::exp(s1) * std::expm1(s2 - s1) / det;
        const double v = 2.0 * std::exp(-s2) * std::expm1(s2 - s1) / det;
        null.push_back({u, v});
        out.vertices.push_back({0.5 * (u - v), 0.5 * (u + v)});
    }
    for (int k = -n + 1; k <= n - 1; ++k) {
        const auto lo = null[static_cast<std::size_t>(k - 1 + n)], hi = null[static_cast<std::size_t>(k + n)];
        So11Face f;
        f.k = k;
        f.ends = {out.vertices[static_cast<std::size_t>(k - 1 + n)], out.vertices[static_cast<std::size_t>(k + n)]};
        f.image = {0.5 * std::log(lo.first / lo.second), 0.5 * std::log(hi.first / hi.second)};
        out.faces.push_back(f);
    }
    // Intersection of all strips |<a, z(kd)>| <= 1, |k| <= n.
    const double big = 4.0 * std::cosh(n * d) + 4.0;
    Polygon2 poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
    for (int k = -n; k <= n; ++k) {
        const PlanePoint g = hyperbola_point(k * d);
        // <a, g> >= -1 and <a, g> <= 1
        poly = clip_polygon(poly, -g.x, g.y, 1.0, 0.0);
        poly = clip_polygon(poly, g.x, -g.y, 1.0, 0.0);
    }
    for (const auto& [x, y] : poly) out.full_intersection.push_back({x, y});
    for (const auto& a : out.full_intersection)
        for (const auto& b : out.full_intersection)
            out.full_intersection_diameter = std::max(out.full_intersection_diameter, std::hypot(a.x - b.x, a.y - b.y));
    return out;
}

}  // namespace lfd

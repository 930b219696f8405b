#include "lfd/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lfd {

Plane Plane::through(const Vec3& normal, double offset) {
    const double len = norm(normal);
    return {normal / len, offset / len};
}

PlaneRegistry::Oriented PlaneRegistry::add(const Plane& half_space, double tol) {
    Plane p = Plane::through(half_space.n, half_space.d);
    int side = 1;
    // Canonical orientation: the first clearly nonzero normal component is positive.
    const double lead = std::abs(p.n.x) > 1e-9 ? p.n.x : (std::abs(p.n.y) > 1e-9 ? p.n.y : p.n.z);
    if (lead < 0.0) {
        p = {p.n * -1.0, -p.d};
        side = -1;
    }
    for (std::size_t i = 0; i < planes_.size(); ++i) {
        const Plane& q = planes_[i];
        if (norm(q.n - p.n) < tol && std::abs(q.d - p.d) < tol) return {static_cast<int>(i), side};
    }
    planes_.push_back(p);
    return {static_cast<int>(planes_.size() - 1), side};
}

Vec3 ConvexCell::centroid() const {
    Vec3 c;
    for (const Vec3& v : vertices) c += v;
    return c / static_cast<double>(vertices.size());
}

std::vector<std::array<Vec3, 4>> ConvexCell::tetrahedra() const {
    std::vector<std::array<Vec3, 4>> out;
    const Vec3 c = centroid();
    for (const Facet& f : facets)
        for (std::size_t i = 1; i + 1 < f.loop.size(); ++i)
            out.push_back({c, vertices[static_cast<std::size_t>(f.loop[0])],
                           vertices[static_cast<std::size_t>(f.loop[i])],
                           vertices[static_cast<std::size_t>(f.loop[i + 1])]});
    return out;
}

double tetrahedron_volume(const std::array<Vec3, 4>& t) {
    return std::abs(dot(t[1] - t[0], cross(t[2] - t[0], t[3] - t[0]))) / 6.0;
}

double ConvexCell::volume() const {
    double v = 0.0;
    for (const auto& t : tetrahedra()) v += tetrahedron_volume(t);
    return v;
}

bool ConvexCell::contains(const Vec3& x, const PlaneRegistry& reg, double tol) const {
    for (const Facet& f : facets)
        if (f.side * reg.plane(f.plane_id).signed_distance(x) > tol) return false;
    return true;
}

Vec3 ConvexCell::outward_normal(const Facet& f, const PlaneRegistry& reg) const {
    return reg.plane(f.plane_id).n * static_cast<double>(f.side);
}

std::vector<Vec3> ConvexCell::facet_polygon(const Facet& f) const {
    std::vector<Vec3> out;
    out.reserve(f.loop.size());
    for (int i : f.loop) out.push_back(vertices[static_cast<std::size_t>(i)]);
    return out;
}

ConvexCell make_box(const Vec3& lo, const Vec3& hi, PlaneRegistry& reg) {
    ConvexCell cell;
    for (int i = 0; i < 8; ++i)
        cell.vertices.push_back({(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y, (i & 4) ? hi.z : lo.z});
    const std::array<std::pair<Plane, std::vector<int>>, 6> faces{{
        {{{1, 0, 0}, hi.x}, {1, 3, 7, 5}},
        {{{-1, 0, 0}, -lo.x}, {0, 4, 6, 2}},
        {{{0, 1, 0}, hi.y}, {2, 6, 7, 3}},
        {{{0, -1, 0}, -lo.y}, {0, 1, 5, 4}},
        {{{0, 0, 1}, hi.z}, {4, 5, 7, 6}},
        {{{0, 0, -1}, -lo.z}, {0, 2, 3, 1}},
    }};
    for (const auto& [plane, loop] : faces) {
        const auto o = reg.add(plane);
        cell.facets.push_back({o.id, o.side, loop});
    }
    return cell;
}

namespace {

PlaneFrame frame_for(const Vec3& n) {
    const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 u = normalized(cross(helper, n));
    return {Vec3{}, u, cross(n, u), n};
}

// Drops consecutive duplicates and loops that enclose no area.
bool clean_loop(std::vector<int>& loop, const std::vector<Vec3>& pool, const Vec3& normal) {
    std::vector<int> out;
    for (int i : loop)
        if (out.empty() || norm(pool[static_cast<std::size_t>(out.back())] - pool[static_cast<std::size_t>(i)]) > 1e-14)
            out.push_back(i);
    while (out.size() > 1 &&
           norm(pool[static_cast<std::size_t>(out.front())] - pool[static_cast<std::size_t>(out.back())]) <= 1e-14)
        out.pop_back();
    if (out.size() < 3) return false;
    Vec3 area;
    const Vec3& o = pool[static_cast<std::size_t>(out[0])];
    for (std::size_t i = 1; i + 1 < out.size(); ++i)
        area += cross(pool[static_cast<std::size_t>(out[i])] - o, pool[static_cast<std::size_t>(out[i + 1])] - o);
    if (std::abs(dot(area, normal)) < 1e-20) return false;
    loop = std::move(out);
    return true;
}

ConvexCell compact(const std::vector<Vec3>& pool, std::vector<Facet> facets) {
    ConvexCell cell;
    std::map<int, int> remap;
    for (Facet& f : facets)
        for (int& i : f.loop) {
            auto [it, inserted] = remap.emplace(i, static_cast<int>(cell.vertices.size()));
            if (inserted) cell.vertices.push_back(pool[static_cast<std::size_t>(i)]);
            i = it->second;
        }
    cell.facets = std::move(facets);
    return cell;
}

}  // namespace

SplitResult split_cell(const ConvexCell& cell, int plane_id, const PlaneRegistry& reg, double tol) {
    const Plane& plane = reg.plane(plane_id);
    const std::size_t nv = cell.vertices.size();
    std::vector<double> s(nv);
    std::vector<int> cls(nv);
    bool any_above = false, any_below = false;
    for (std::size_t i = 0; i < nv; ++i) {
        s[i] = plane.signed_distance(cell.vertices[i]);
        cls[i] = s[i] > tol ? 1 : (s[i] < -tol ? -1 : 0);
        any_above |= cls[i] == 1;
        any_below |= cls[i] == -1;
    }
    if (!any_above) return {cell, std::nullopt};
    if (!any_below) return {std::nullopt, cell};

    std::vector<Vec3> pool = cell.vertices;
    std::map<std::pair<int, int>, int> cut_cache;
    std::vector<int> cap;
    for (std::size_t i = 0; i < nv; ++i)
        if (cls[i] == 0) cap.push_back(static_cast<int>(i));
    auto cut = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = cut_cache.find(key);
        if (it != cut_cache.end()) return it->second;
        const auto ua = static_cast<std::size_t>(key.first), ub = static_cast<std::size_t>(key.second);
        const double t = s[ua] / (s[ua] - s[ub]);
        pool.push_back(pool[ua] + (pool[ub] - pool[ua]) * t);
        const int idx = static_cast<int>(pool.size() - 1);
        cut_cache.emplace(key, idx);
        cap.push_back(idx);
        return idx;
    };

    std::vector<Facet> below, above;
    for (const Facet& f : cell.facets) {
        Facet fb{f.plane_id, f.side, {}}, fa{f.plane_id, f.side, {}};
        const std::size_t n = f.loop.size();
        for (std::size_t k = 0; k < n; ++k) {
            const int a = f.loop[k], b = f.loop[(k + 1) % n];
            const int ca = cls[static_cast<std::size_t>(a)], cb = cls[static_cast<std::size_t>(b)];
            if (ca <= 0) fb.loop.push_back(a);
            if (ca >= 0) fa.loop.push_back(a);
            if (ca * cb < 0) {
                const int c = cut(a, b);
                fb.loop.push_back(c);
                fa.loop.push_back(c);
            }
        }
        const Vec3 normal = cell.outward_normal(f, reg);
        if (clean_loop(fb.loop, pool, normal)) below.push_back(std::move(fb));
        if (clean_loop(fa.loop, pool, normal)) above.push_back(std::move(fa));
    }

    // Cross-section polygon ordered counter-clockwise about +n.
    const PlaneFrame frame = frame_for(plane.n);
    Vec3 mid;
    for (int i : cap) mid += pool[static_cast<std::size_t>(i)];
    mid = mid / static_cast<double>(cap.size());
    std::vector<std::pair<double, int>> ordered;
    for (int i : cap) {
        const Vec3 d = pool[static_cast<std::size_t>(i)] - mid;
        ordered.emplace_back(std::atan2(dot(d, frame.v), dot(d, frame.u)), i);
    }
    std::sort(ordered.begin(), ordered.end());
    Facet cap_below{plane_id, 1, {}};
    for (const auto& [ang, i] : ordered) cap_below.loop.push_back(i);
    Facet cap_above{plane_id, -1, {cap_below.loop.rbegin(), cap_below.loop.rend()}};
    if (clean_loop(cap_below.loop, pool, plane.n)) below.push_back(std::move(cap_below));
    if (clean_loop(cap_above.loop, pool, plane.n * -1.0)) above.push_back(std::move(cap_above));

    SplitResult out;
    if (below.size() >= 4) out.below = compact(pool, std::move(below));
    if (above.size() >= 4) out.above = compact(pool, std::move(above));
    return out;
}

std::optional<ConvexCell> clip_cell(const ConvexCell& cell, PlaneRegistry::Oriented half,
                                    const PlaneRegistry& reg, double tol) {
    SplitResult r = split_cell(cell, half.id, reg, tol);
    return half.side > 0 ? std::move(r.below) : std::move(r.above);
}

ConvexCell clip_box(const Vec3& lo, const Vec3& hi, const std::vector<Plane>& half_spaces, PlaneRegistry& reg) {
    ConvexCell cell = make_box(lo, hi, reg);
    for (const Plane& h : half_spaces) {
        auto clipped = clip_cell(cell, reg.add(h), reg);
        if (!clipped) return {};
        cell = std::move(*clipped);
    }
    return cell;
}

double integrate_tetrahedron(const std::array<Vec3, 4>& tet, const std::function<double(const Vec3&)>& f, int s) {
    constexpr int n = 3;
    const int d = 2 * s + 1;
    auto factorial = [](int k) {
        double r = 1.0;
        for (int i = 2; i <= k; ++i) r *= i;
        return r;
    };
    double total = 0.0;
    for (int i = 0; i <= s; ++i) {
        const int denom = d + n - 2 * i;
        const double weight = ((i % 2) ? -1.0 : 1.0) * std::pow(2.0, -2 * s) * std::pow(denom, d) /
                              (factorial(i) * factorial(d + n - i));
        const int level = s - i;
        double sum = 0.0;
        for (int b0 = 0; b0 <= level; ++b0)
            for (int b1 = 0; b0 + b1 <= level; ++b1)
                for (int b2 = 0; b0 + b1 + b2 <= level; ++b2) {
                    const int b3 = level - b0 - b1 - b2;
                    const Vec3 x = tet[0] * ((2.0 * b0 + 1) / denom) + tet[1] * ((2.0 * b1 + 1) / denom) +
                                   tet[2] * ((2.0 * b2 + 1) / denom) + tet[3] * ((2.0 * b3 + 1) / denom);
                    sum += f(x);
                }
        total += weight * sum;
    }
    // The rule integrates over the unit simplex of volume 1/6.
    return total * 6.0 * tetrahedron_volume(tet);
}

PlaneFrame PlaneFrame::from_normal(const Vec3& normal, const Vec3& origin) {
    PlaneFrame f = frame_for(normalized(normal));
    f.origin = origin;
    return f;
}

double polygon_area(const Polygon2& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        a += p.first * q.second - q.first * p.second;
    }
    return 0.5 * a;
}

Polygon2 clip_polygon(const Polygon2& poly, double a, double b, double c, double tol) {
    Polygon2 out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        const double sp = a * p.first + b * p.second - c;
        const double sq = a * q.first + b * q.second - c;
        if (sp <= tol) out.push_back(p);
        if ((sp < -tol && sq > tol) || (sp > tol && sq < -tol)) {
            const double t = sp / (sp - sq);
            out.emplace_back(p.first + t * (q.first - p.first), p.second + t * (q.second - p.second));
        }
    }
    return out;
}

std::vector<Polygon2> subtract_convex(const Polygon2& poly, const Polygon2& hole_in, double tol) {
    Polygon2 hole = hole_in;
    if (polygon_area(hole) < 0.0) std::reverse(hole.begin(), hole.end());
    std::vector<Polygon2> pieces;
    Polygon2 cur = poly;
    for (std::size_t i = 0; i < hole.size() && cur.size() >= 3; ++i) {
        const auto& p = hole[i];
        const auto& q = hole[(i + 1) % hole.size()];
        double a = q.second - p.second, b = -(q.first - p.first);
        const double len = std::hypot(a, b);
        if (len < 1e-15) continue;
        a /= len;
        b /= len;
        const double c = a * p.first + b * p.second;
        Polygon2 outside = clip_polygon(cur, -a, -b, -c, tol);
        if (outside.size() >= 3 && std::abs(polygon_area(outside)) > 1e-18) pieces.push_back(std::move(outside));
        cur = clip_polygon(cur, a, b, c, tol);
    }
    return pieces;
}

double point_polygon_distance(const Vec3& x, const std::vector<Vec3>& poly) {
    Vec3 normal;
    for (std::size_t i = 0; i < poly.size(); ++i) normal += cross(poly[i], poly[(i + 1) % poly.size()]);
    normal = normalized(normal);
    const double offset = dot(x - poly[0], normal);
    const Vec3 proj = x - normal * offset;
    bool inside = true;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec3& p = poly[i];
        const Vec3& q = poly[(i + 1) % poly.size()];
        if (dot(cross(q - p, proj - p), normal) < 0.0) {
            inside = false;
            break;
        }
    }
    if (inside) return std::abs(offset);
    double best = 1e300;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec3& p = poly[i];
        const Vec3& q = poly[(i + 1) % poly.size()];
        const Vec3 e = q - p;
        const double len2 = dot(e, e);
        const double t = len2 > 0.0 ? std::clamp(dot(x - p, e) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, norm(x - (p + e * t)));
    }
    return best;
}

}  // namespace lfd

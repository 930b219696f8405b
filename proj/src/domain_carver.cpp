#include "lfd/domain_carver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lfd/error.hpp"

namespace lfd {

namespace {

constexpr double kClassifyTol = 1e-11;

Complex zof(const Vec3& v) { return {v.x, v.y}; }

double margin_at(const Vec3& v) { return std::sqrt(1.0 + v.z * v.z) - std::hypot(v.x, v.y); }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    int count() {
        int c = 0;
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (find(static_cast<int>(i)) == static_cast<int>(i)) ++c;
        return c;
    }
};

// Grid hash merging points closer than `snap`.
class Welder {
public:
    explicit Welder(double snap) : snap_(snap) {}

    int add(const Vec3& p) {
        const auto k = key(p);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    auto it = grid_.find(pack(k[0] + dx, k[1] + dy, k[2] + dz));
                    if (it == grid_.end()) continue;
                    for (int id : it->second)
                        if (norm(points[static_cast<std::size_t>(id)] - p) <= snap_) return id;
                }
        const int id = static_cast<int>(points.size());
        points.push_back(p);
        grid_[pack(k[0], k[1], k[2])].push_back(id);
        return id;
    }

    std::vector<Vec3> points;

private:
    std::array<std::int64_t, 3> key(const Vec3& p) const {
        return {static_cast<std::int64_t>(std::floor(p.x / snap_)), static_cast<std::int64_t>(std::floor(p.y / snap_)),
                static_cast<std::int64_t>(std::floor(p.z / snap_))};
    }
    static std::uint64_t pack(std::int64_t a, std::int64_t b, std::int64_t c) {
        auto h = static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(b) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(c) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
        return h;
    }

    double snap_;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

// Distance from 0 to the convex hull of 2D points.
double hull_distance_from_origin(std::vector<Complex> pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    auto crs = [](Complex o, Complex a, Complex b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<Complex> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (Complex p : pts) {
            while (hull.size() >= base + 2 && crs(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        std::reverse(pts.begin(), pts.end());
    }
    if (hull.size() < 3) {
        double best = kInfinity;
        for (Complex p : pts) best = std::min(best, std::abs(p));
        if (pts.size() == 2) {
            const Complex d = pts[1] - pts[0];
            const double n2 = std::norm(d);
            if (n2 > 0.0) {
                const double s = std::clamp(-(pts[0].real() * d.real() + pts[0].imag() * d.imag()) / n2, 0.0, 1.0);
                best = std::min(best, std::abs(pts[0] + s * d));
            }
        }
        return best;
    }
    bool inside = true;
    double best = kInfinity;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Complex a = hull[i], b = hull[(i + 1) % hull.size()];
        if (crs(a, b, Complex{0.0, 0.0}) < 0.0) inside = false;
        const Complex d = b - a;
        const double n2 = std::norm(d);
        const double s = n2 > 0.0 ? std::clamp(-(a.real() * d.real() + a.imag() * d.imag()) / n2, 0.0, 1.0) : 0.0;
        best = std::min(best, std::abs(a + s * d));
    }
    return inside ? 0.0 : best;
}

// min |w - conj(x) z| over a convex cell.
double prism_gap(const ConvexCell& cell, Complex x) {
    std::vector<Complex> img;
    img.reserve(cell.vertices.size());
    for (const Vec3& v : cell.vertices) img.push_back(Complex{1.0, v.z} - std::conj(x) * zof(v));
    return hull_distance_from_origin(std::move(img));
}

// A point of the cell inside the cone, preferring the centroid.
std::optional<Vec3> cone_point(const ConvexCell& cell) {
    const Vec3 c = cell.centroid();
    if (margin_at(c) > 0.0) return c;
    double best = 0.0;
    std::optional<Vec3> out;
    for (const Vec3& v : cell.vertices) {
        const double m = margin_at(v);
        if (m > best) {
            best = m;
            out = v;
        }
    }
    return out;
}

std::vector<std::array<int, 2>> cell_edges(const ConvexCell& cell) {
    std::set<std::array<int, 2>> edges;
    for (const Facet& f : cell.facets)
        for (std::size_t i = 0; i < f.loop.size(); ++i) {
            int a = f.loop[i], b = f.loop[(i + 1) % f.loop.size()];
            if (a > b) std::swap(a, b);
            edges.insert({a, b});
        }
    return {edges.begin(), edges.end()};
}

double segment_min_margin(const Vec3& a, const Vec3& b) {
    constexpr int kSamples = 32;
    double best = kInfinity;
    int arg = 0;
    for (int i = 0; i <= kSamples; ++i) {
        const double m = margin_at(a + (b - a) * (static_cast<double>(i) / kSamples));
        if (m < best) {
            best = m;
            arg = i;
        }
    }
    double lo = std::max(0, arg - 1) / static_cast<double>(kSamples);
    double hi = std::min(kSamples, arg + 1) / static_cast<double>(kSamples);
    for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (margin_at(a + (b - a) * m1) < margin_at(a + (b - a) * m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::min(best, margin_at(a + (b - a) * (0.5 * (lo + hi))));
}

struct PrismPlane {
    Plane half;
    GroupElement g;
};

std::vector<PrismPlane> prism_planes(const LiftedGroup& group, const OrbitPoint& point, int window) {
    std::vector<PrismPlane> out;
    for (int m = -window; m <= window; ++m) {
        const GroupElement g = mul(point.rep, power(group.rd, m));
        if (auto h = chart_half_space(g)) out.push_back({*h, g});
    }
    return out;
}

std::vector<Plane> initial_half_spaces(double slab) {
    // 16-gon around the widest cross-section |z| <= sqrt(1 + T^2).
    const double rho = std::sqrt(1.0 + slab * slab);
    std::vector<Plane> out;
    for (int k = 0; k < 16; ++k) {
        const double phi = 2.0 * kPi * k / 16.0;
        out.push_back(Plane::through({std::cos(phi), std::sin(phi), 0.0}, rho));
    }
    return out;
}

// Carves `cell` by the prism: the parts strictly inside Q_x are dropped.
void carve_cell(const ConvexCell& cell, const OrbitPoint& point, const std::vector<PrismPlane>& planes,
                PlaneRegistry& reg, std::vector<ConvexCell>& out, bool& used) {
    const double cutoff = point.f * (1.0 + 1e-9) + 1e-12;
    std::vector<ConvexCell> stack{cell};
    while (!stack.empty()) {
        ConvexCell c = std::move(stack.back());
        stack.pop_back();
        if (prism_gap(c, point.x) > cutoff) {
            out.push_back(std::move(c));
            continue;
        }
        int crossing = -1;
        bool keep = false;
        for (std::size_t j = 0; j < planes.size() && !keep; ++j) {
            double lo = kInfinity, hi = -kInfinity;
            for (const Vec3& v : c.vertices) {
                const double s = planes[j].half.signed_distance(v);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            if (hi <= kClassifyTol) {
                if (auto p = cone_point(c)) keep = tangency(planes[j].g, chart_lift(*p)).in_window();
            } else if (lo < -kClassifyTol && crossing < 0) {
                crossing = static_cast<int>(j);
            }
        }
        if (keep) {
            out.push_back(std::move(c));
            continue;
        }
        if (crossing < 0) {
            used = true;
            continue;
        }
        const auto h = reg.add(planes[static_cast<std::size_t>(crossing)].half, 1e-10);
        SplitResult s = split_cell(c, h.id, reg, kClassifyTol);
        if (!s.below || !s.above) {
            out.push_back(std::move(c));
            continue;
        }
        used = true;
        stack.push_back(std::move(*s.below));
        stack.push_back(std::move(*s.above));
    }
}

struct Piece {
    std::vector<Vec3> polygon;
    int plane_id;
    int side;
};

double polygon_perimeter(const Polygon2& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % p.size()];
        s += std::hypot(b.first - a.first, b.second - a.second);
    }
    return s;
}

bool substantial(const Polygon2& p, double min_area) {
    if (p.size() < 3) return false;
    const double a = std::abs(polygon_area(p));
    return a > min_area && a > 1e-9 * polygon_perimeter(p);
}

double overlap_area(const Polygon2& a, const Polygon2& b_in) {
    Polygon2 b = b_in;
    if (polygon_area(b) < 0.0) std::reverse(b.begin(), b.end());
    Polygon2 cur = a;
    for (std::size_t i = 0; i < b.size() && cur.size() >= 3; ++i) {
        const auto& p = b[i];
        const auto& q = b[(i + 1) % b.size()];
        double nx = q.second - p.second, ny = -(q.first - p.first);
        const double len = std::hypot(nx, ny);
        if (len < 1e-15) continue;
        nx /= len;
        ny /= len;
        cur = clip_polygon(cur, nx, ny, nx * p.first + ny * p.second);
    }
    return cur.size() >= 3 ? std::abs(polygon_area(cur)) : 0.0;
}

// Exposed parts of cell facets: each facet minus the facets of neighbours on the
// other side of the same plane. Also counts connected components of cells.
std::vector<Piece> exposed_pieces(const std::vector<ConvexCell>& cells, const PlaneRegistry& reg,
                                  double min_area, int& components) {
    struct Entry {
        std::size_t cell;
        int side;
        Polygon2 poly;
        double lo[2], hi[2];
    };
    std::map<int, std::vector<Entry>> by_plane;
    std::map<int, PlaneFrame> frames;
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        for (const Facet& f : cells[ci].facets) {
            const Plane& pl = reg.plane(f.plane_id);
            auto it = frames.find(f.plane_id);
            if (it == frames.end()) it = frames.emplace(f.plane_id, PlaneFrame::from_normal(pl.n, pl.n * pl.d)).first;
            Entry e{ci, f.side, {}, {kInfinity, kInfinity}, {-kInfinity, -kInfinity}};
            for (int vi : f.loop) {
                const auto uv = it->second.project(cells[ci].vertices[static_cast<std::size_t>(vi)]);
                e.poly.push_back(uv);
                e.lo[0] = std::min(e.lo[0], uv.first);
                e.lo[1] = std::min(e.lo[1], uv.second);
                e.hi[0] = std::max(e.hi[0], uv.first);
                e.hi[1] = std::max(e.hi[1], uv.second);
            }
            by_plane[f.plane_id].push_back(std::move(e));
        }

    UnionFind uf(cells.size());
    std::vector<Piece> out;
    for (auto& [pid, entries] : by_plane) {
        const PlaneFrame& fr = frames.at(pid);
        for (const Entry& e : entries) {
            std::vector<Polygon2> pieces{e.poly};
            for (const Entry& o : entries) {
                if (o.side == e.side) continue;
                if (o.lo[0] > e.hi[0] + 1e-9 || o.hi[0] < e.lo[0] - 1e-9 || o.lo[1] > e.hi[1] + 1e-9 ||
                    o.hi[1] < e.lo[1] - 1e-9)
                    continue;
                if (overlap_area(e.poly, o.poly) <= min_area) continue;
                uf.unite(static_cast<int>(e.cell), static_cast<int>(o.cell));
                std::vector<Polygon2> next;
                for (const Polygon2& p : pieces) {
                    if (overlap_area(p, o.poly) <= min_area) {
                        next.push_back(p);
                        continue;
                    }
                    for (Polygon2& q : subtract_convex(p, o.poly))
                        if (substantial(q, min_area)) next.push_back(std::move(q));
                }
                pieces = std::move(next);
                if (pieces.empty()) break;
            }
            for (const Polygon2& p : pieces) {
                if (!substantial(p, min_area)) continue;
                Piece piece{{}, pid, e.side};
                for (const auto& uv : p) piece.polygon.push_back(fr.lift(uv.first, uv.second));
                out.push_back(std::move(piece));
            }
        }
    }
    components = uf.count();
    return out;
}

Vec3 polygon_centroid(const std::vector<Vec3>& poly) {
    // Area-weighted centroid of a planar convex polygon.
    Vec3 acc;
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        const double a = norm(cross(poly[i] - poly[0], poly[i + 1] - poly[0]));
        acc += (poly[0] + poly[i] + poly[i + 1]) * (a / 3.0);
        total += a;
    }
    if (total <= 0.0) {
        Vec3 s;
        for (const Vec3& v : poly) s += v;
        return s / static_cast<double>(poly.size());
    }
    return acc / total;
}

std::optional<CutterLabel> label_piece(const LiftedGroup& group, const OrbitAtlas& atlas, int window,
                                       const Vec3& centroid, const Vec3& plane_normal) {
    const CoverPoint a = chart_lift(centroid);
    const Complex w{1.0, centroid.z};
    for (std::size_t i = 0; i < atlas.points.size(); ++i) {
        const OrbitPoint& pt = atlas.points[i];
        if (std::abs(w - std::conj(pt.x) * zof(centroid)) > pt.f * (1.0 + 1e-9) + 1e-7) continue;
        for (int m = -window; m <= window; ++m) {
            if (i == 0 && m == 0) continue;
            const GroupElement g = mul(pt.rep, power(group.rd, m));
            const TangencyValue tv = tangency(g, a);
            if (!tv.in_window() || std::abs(tv.value - 1.0) > 1e-7) continue;
            const auto h = chart_half_space(g);
            if (!h || std::abs(std::abs(dot(h->n, plane_normal)) - 1.0) > 1e-7) continue;
            CutterLabel label;
            label.kind = i == 0 ? CutterLabel::Kind::Wedge : CutterLabel::Kind::Prism;
            label.point = i;
            label.m = m;
            label.g = g;
            Word word = pt.word;
            const std::int64_t shift = pt.rd_shift + m;
            if (shift != 0) {
                append_letter(word, {group.fixed_vertex, group.rd_gen_power * shift});
                if (group.rd_central_power != 0) {
                    std::ostringstream os;
                    os << word_to_string(word) << " z0^" << group.rd_central_power * shift;
                    label.word = os.str();
                    return label;
                }
            }
            label.word = word_to_string(word);
            return label;
        }
    }
    return std::nullopt;
}

// Welds piece vertices, splits T-junctions, and finds the corners, edges and
// connected patches of every face.
void build_boundary(PolyComplex& cx, const std::vector<std::vector<Vec3>>& polys, const std::vector<int>& poly_face,
                    double snap) {
    Welder welder(snap);
    std::vector<std::vector<int>> loops;
    std::vector<int> loop_face;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        std::vector<int> loop;
        for (const Vec3& v : polys[i]) {
            const int id = welder.add(v);
            if (loop.empty() || loop.back() != id) loop.push_back(id);
        }
        while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
        if (loop.size() < 3) continue;
        loops.push_back(std::move(loop));
        loop_face.push_back(poly_face[i]);
    }
    const std::vector<Vec3>& pts = welder.points;

    // T-junctions: points of other pieces lying inside an edge.
    for (auto& loop : loops) {
        std::vector<int> out;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const int a = loop[i], b = loop[(i + 1) % loop.size()];
            out.push_back(a);
            const Vec3 pa = pts[static_cast<std::size_t>(a)], d = pts[static_cast<std::size_t>(b)] - pa;
            const double len2 = dot(d, d);
            std::vector<std::pair<double, int>> inner;
            for (std::size_t c = 0; c < pts.size(); ++c) {
                if (static_cast<int>(c) == a || static_cast<int>(c) == b) continue;
                const Vec3 rel = pts[c] - pa;
                const double s = dot(rel, d) / len2;
                if (s <= 1e-9 || s >= 1.0 - 1e-9) continue;
                if (norm(rel - d * s) <= snap) inner.push_back({s, static_cast<int>(c)});
            }
            std::sort(inner.begin(), inner.end());
            for (const auto& [s, c] : inner) out.push_back(c);
        }
        loop = std::move(out);
    }

    // Per-face boundary: directed edges that do not cancel inside the face.
    const std::size_t nf = cx.faces.size();
    std::vector<std::map<std::pair<int, int>, int>> directed(nf);
    std::vector<UnionFind> patches;
    std::vector<std::vector<std::size_t>> face_loops(nf);
    for (std::size_t li = 0; li < loops.size(); ++li) face_loops[static_cast<std::size_t>(loop_face[li])].push_back(li);

    int face_patches = 0;
    std::vector<std::multimap<int, int>> out_edges(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        std::map<std::pair<int, int>, int> count;
        std::map<std::pair<int, int>, std::size_t> owner;
        UnionFind uf(face_loops[f].size());
        for (std::size_t k = 0; k < face_loops[f].size(); ++k) {
            const auto& loop = loops[face_loops[f][k]];
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const int a = loop[i], b = loop[(i + 1) % loop.size()];
                ++count[{a, b}];
                const std::pair<int, int> und{std::min(a, b), std::max(a, b)};
                auto it = owner.find(und);
                if (it == owner.end())
                    owner.emplace(und, k);
                else
                    uf.unite(static_cast<int>(it->second), static_cast<int>(k));
            }
        }
        face_patches += uf.count();
        for (const auto& [e, c] : count) {
            const int back = count.count({e.second, e.first}) ? count.at({e.second, e.first}) : 0;
            for (int r = 0; r < c - back; ++r) out_edges[f].emplace(e.first, e.second);
        }
    }

    // Corners: a boundary vertex is a corner unless the boundary passes straight through it.
    std::vector<char> corner(pts.size(), 0);
    for (std::size_t f = 0; f < nf; ++f) {
        std::map<int, std::vector<int>> in, out;
        for (const auto& [a, b] : out_edges[f]) {
            out[a].push_back(b);
            in[b].push_back(a);
        }
        std::set<int> own;
        for (const auto& [v, outs] : out) {
            const auto it = in.find(v);
            bool straight = false;
            if (outs.size() == 1 && it != in.end() && it->second.size() == 1) {
                const Vec3 d1 = pts[static_cast<std::size_t>(v)] - pts[static_cast<std::size_t>(it->second[0])];
                const Vec3 d2 = pts[static_cast<std::size_t>(outs[0])] - pts[static_cast<std::size_t>(v)];
                straight = norm(cross(d1, d2)) <= 1e-7 * norm(d1) * norm(d2) && dot(d1, d2) > 0.0;
            }
            if (!straight) {
                corner[static_cast<std::size_t>(v)] = 1;
                own.insert(v);
            }
        }
        for (int v : own) cx.faces[f].corners.push_back(pts[static_cast<std::size_t>(v)]);
    }

    // Edges: boundary runs between consecutive corners.
    std::set<std::array<int, 2>> edges;
    for (std::size_t f = 0; f < nf; ++f) {
        std::multimap<int, int> remaining = out_edges[f];
        for (auto it = remaining.begin(); it != remaining.end();) {
            if (!corner[static_cast<std::size_t>(it->first)]) {
                ++it;
                continue;
            }
            const int start = it->first;
            int cur = it->second;
            it = remaining.erase(it);
            std::size_t guard = 0;
            while (!corner[static_cast<std::size_t>(cur)] && guard++ < pts.size()) {
                auto nx = remaining.find(cur);
                if (nx == remaining.end()) break;
                const int next = nx->second;
                if (nx == it) ++it;
                remaining.erase(nx);
                cur = next;
            }
            edges.insert({std::min(start, cur), std::max(start, cur)});
        }
    }

    std::vector<int> remap(pts.size(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (corner[i]) {
            remap[i] = static_cast<int>(cx.vertices.size());
            cx.vertices.push_back(pts[i]);
        }
    for (const auto& e : edges)
        if (e[0] != e[1]) cx.edges.push_back({remap[static_cast<std::size_t>(e[0])], remap[static_cast<std::size_t>(e[1])]});
    cx.face_patches = face_patches;
    cx.boundary_points = pts;
    cx.boundary_loops = std::move(loops);
    cx.loop_face = std::move(loop_face);
}

}  // namespace

std::optional<Plane> chart_half_space(const GroupElement& g) {
    const PseudoVector v = project_pi(g);
    const Vec3 n{v.z.real(), v.z.imag(), -v.w.imag()};
    const double len = norm(n);
    if (len < 1e-12) return std::nullopt;
    return Plane{n / len, (v.w.real() - 1.0) / len};
}

std::vector<Cutter> cutter_set(const LiftedGroup& group, const OrbitAtlas& atlas, int window) {
    std::vector<Cutter> out;
    for (int m : {1, -1}) {
        CutterLabel label;
        label.kind = CutterLabel::Kind::Wedge;
        label.m = m;
        label.g = power(group.rd, m);
        label.word = m == 1 ? "rd" : "rd^-1";
        out.push_back({*chart_half_space(label.g), label});
    }
    for (std::size_t i = 1; i < atlas.points.size(); ++i)
        for (int m = -window; m <= window; ++m) {
            CutterLabel label;
            label.point = i;
            label.m = m;
            label.g = mul(atlas.points[i].rep, power(group.rd, m));
            label.word = atlas.points[i].label();
            if (auto h = chart_half_space(label.g)) out.push_back({*h, label});
        }
    return out;
}

std::optional<std::size_t> PolyComplex::face_index(const CutterLabel& label) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].label.key() == label.key()) return i;
    return std::nullopt;
}

PolyComplex carve(const LiftedGroup& group, const OrbitAtlas& atlas, const CarveOptions& options) {
    if (atlas.points.empty()) throw Error(ErrorKind::EmptyAtlas, "atlas has no points");
    PolyComplex cx;
    cx.theta = group.theta;
    cx.slab = std::tan(group.theta / 2.0);
    const int window = options.window > 0 ? options.window : window_for_argument(group.theta / 2.0, group.theta);

    const double rho = std::sqrt(1.0 + cx.slab * cx.slab);
    const Vec3 lo{-1.5 * rho, -1.5 * rho, -cx.slab}, hi{1.5 * rho, 1.5 * rho, cx.slab};
    std::vector<ConvexCell> cells{clip_box(lo, hi, initial_half_spaces(cx.slab), cx.registry)};

    for (std::size_t i = 1; i < atlas.points.size(); ++i) {
        const auto planes = prism_planes(group, atlas.points[i], window);
        std::vector<ConvexCell> next;
        next.reserve(cells.size());
        bool used = false;
        for (const ConvexCell& c : cells) carve_cell(c, atlas.points[i], planes, cx.registry, next, used);
        cells = std::move(next);
        if (used) ++cx.prisms_used;
    }
    std::erase_if(cells, [](const ConvexCell& c) { return c.volume() < 1e-14; });
    if (cells.empty()) throw Error(ErrorKind::NonCompact, "carving removed everything");

    double margin = kInfinity;
    for (const ConvexCell& c : cells)
        for (const auto& e : cell_edges(c))
            margin = std::min(margin, segment_min_margin(c.vertices[static_cast<std::size_t>(e[0])],
                                                         c.vertices[static_cast<std::size_t>(e[1])]));
    cx.min_margin = margin;
    if (!(margin > atlas.epsilon)) {
        std::ostringstream os;
        os << "stability certificate failed: margin " << margin << " <= epsilon " << atlas.epsilon;
        throw Error(ErrorKind::CutoffTooLarge, os.str());
    }

    const std::vector<Piece> pieces = exposed_pieces(cells, cx.registry, options.sliver_area, cx.components);
    cx.cells = std::move(cells);

    std::map<std::tuple<int, std::size_t, int>, std::size_t> face_of;
    std::vector<std::vector<Vec3>> polys;
    std::vector<std::tuple<int, std::size_t, int>> poly_key;
    std::vector<Face> faces;
    for (const Piece& p : pieces) {
        const Plane& pl = cx.registry.plane(p.plane_id);
        const Vec3 c = polygon_centroid(p.polygon);
        const auto label = label_piece(group, atlas, window, c, pl.n);
        if (!label) {
            std::ostringstream os;
            os << "unlabelled boundary piece at (" << c.x << ", " << c.y << ", " << c.z << ")";
            throw Error(ErrorKind::NonCompact, os.str());
        }
        auto it = face_of.find(label->key());
        if (it == face_of.end()) {
            Face f;
            f.label = *label;
            f.plane_id = p.plane_id;
            f.outward = pl.n * static_cast<double>(p.side);
            it = face_of.emplace(label->key(), faces.size()).first;
            faces.push_back(std::move(f));
        }
        Face& f = faces[it->second];
        double area = 0.0;
        for (std::size_t i = 1; i + 1 < p.polygon.size(); ++i)
            area += 0.5 * norm(cross(p.polygon[i] - p.polygon[0], p.polygon[i + 1] - p.polygon[0]));
        f.area += area;
        f.pieces.push_back(p.polygon);
        polys.push_back(p.polygon);
        poly_key.push_back(label->key());
    }
    // Faces in label order.
    std::vector<std::size_t> order(faces.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return faces[a].label.key() < faces[b].label.key(); });
    std::vector<int> rank(faces.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = static_cast<int>(i);
        cx.faces.push_back(faces[order[i]]);
    }
    std::vector<int> poly_face;
    for (const auto& k : poly_key) poly_face.push_back(rank[face_of.at(k)]);

    build_boundary(cx, polys, poly_face, options.snap);
    return cx;
}

CarveRun carve_adaptive(const LiftedGroup& group, double epsilon0, double floor, const CarveOptions& options) {
    if (!(epsilon0 > 0.0) || !(floor > 0.0)) throw Error(ErrorKind::InvalidCutoff, "cutoff must be positive");
    CarveRun run;
    std::string last;
    for (double eps = epsilon0; eps >= floor * (1.0 - 1e-12); eps /= 2.0) {
        run.tried_epsilons.push_back(eps);
        run.atlas = orbit_enumerate(group, eps);
        try {
            run.complex = carve(group, run.atlas, options);
            return run;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CutoffTooLarge) throw;
            last = e.what();
        }
    }
    throw Error(ErrorKind::CutoffTooLarge, "no cutoff down to the floor passed: " + last);
}

bool in_fundamental_domain(const LiftedGroup& group, const OrbitAtlas& atlas, const Vec3& c, double tol) {
    const double slab = std::tan(group.theta / 2.0);
    if (std::abs(c.z) > slab + tol) return false;
    if (!(margin_at(c) > 0.0)) return false;
    const CoverPoint a = chart_lift(c);
    const int window = window_for_argument(group.theta / 2.0, group.theta);
    const Complex w{1.0, c.z};
    for (std::size_t i = 1; i < atlas.points.size(); ++i) {
        const OrbitPoint& pt = atlas.points[i];
        if (std::abs(w - std::conj(pt.x) * zof(c)) > pt.f * (1.0 + 1e-9) + tol) continue;
        if (prism_membership(make_prism(group, pt, window), a, tol) == PrismSide::Interior) return false;
    }
    return true;
}

Location locate(const PolyComplex& complex, const Vec3& c, double tol) {
    Location loc;
    for (const ConvexCell& cell : complex.cells)
        if (cell.contains(c, complex.registry, tol)) {
            loc.inside = true;
            break;
        }
    loc.boundary_distance = kInfinity;
    for (const Face& f : complex.faces)
        for (const auto& p : f.pieces) loc.boundary_distance = std::min(loc.boundary_distance, point_polygon_distance(c, p));
    return loc;
}

std::optional<Vec3> map_chart_point(const GroupElement& g, const Vec3& c, double tol) {
    if (!(margin_at(c) > 0.0)) return std::nullopt;
    const CoverPoint b = act(g, chart_lift(c));
    if (!on_E({GroupElement::identity()}, b, tol)) return std::nullopt;
    const double h = b.r * std::cos(b.alpha);
    return Vec3{b.z.real() / h, b.z.imag() / h, std::tan(b.alpha)};
}

namespace {

double hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    auto one_way = [](const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
        double worst = 0.0;
        for (const Vec3& x : p) {
            double best = kInfinity;
            for (const Vec3& y : q) best = std::min(best, norm(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : kInfinity;
    return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace

bool FacePairing::is_involution() const {
    for (const PairingEntry& e : entries) {
        bool found = false;
        for (const PairingEntry& o : entries)
            if (o.face == e.partner && o.partner == e.face &&
                element_distance(o.mapping, inverse(e.mapping)) < 1e-6)
                found = true;
        if (!found) return false;
    }
    return unmatched.empty();
}

FacePairing face_pairing(const LiftedGroup& group, const OrbitAtlas& atlas, const PolyComplex& complex,
                         double tol) {
    FacePairing out;
    for (std::size_t i = 0; i < complex.faces.size(); ++i) {
        const Face& f = complex.faces[i];
        const GroupElement h = inverse(f.label.g);
        const auto j = atlas.find(orbit_point(h));
        if (!j) {
            out.unmatched.push_back(i);
            continue;
        }
        const GroupElement rest = mul(inverse(atlas.points[*j].rep), h);
        CutterLabel want;
        want.kind = *j == 0 ? CutterLabel::Kind::Wedge : CutterLabel::Kind::Prism;
        want.point = *j;
        want.m = static_cast<int>(std::llround(-rest.alpha / group.theta));
        const auto partner = complex.face_index(want);
        if (!partner) {
            out.unmatched.push_back(i);
            continue;
        }
        std::vector<Vec3> image;
        bool ok = true;
        for (const Vec3& v : f.corners) {
            const auto m = map_chart_point(h, v);
            if (!m) {
                ok = false;
                break;
            }
            image.push_back(*m);
        }
        const double residual = ok ? hausdorff(image, complex.faces[*partner].corners) : kInfinity;
        if (!(residual <= tol)) {
            out.unmatched.push_back(i);
            continue;
        }
        PairingEntry e;
        e.face = i;
        e.partner = *partner;
        e.mapping = h;
        e.residual = residual;
        if (f.corners.size() >= 2) {
            // Flag: a corner and its nearest other corner.
            std::size_t nb = 1;
            for (std::size_t k = 2; k < f.corners.size(); ++k)
                if (norm(f.corners[k] - f.corners[0]) < norm(f.corners[nb] - f.corners[0])) nb = k;
            e.flag = {f.corners[0], f.corners[nb]};
            e.flag_image = {image[0], image[nb]};
        }
        out.entries.push_back(e);
    }
    return out;
}

std::vector<CoverWitness> tiling_witnesses(const LiftedGroup& group, const OrbitAtlas& atlas, const GroupElement& a,
                                           int window) {
    const BoundarySection bs = boundary_section(group, atlas, a, window);
    const CoverPoint p = scale(a, bs.value);
    std::vector<CoverWitness> out;
    for (const Achiever& ach : bs.achievers)
        for (int m = -window; m <= window; ++m) {
            const GroupElement g = mul(atlas.points[ach.point].rep, power(group.rd, m));
            if (!on_E({g}, p, 1e-8)) continue;
            const CoverPoint q = act(inverse(g), p);
            const double h = q.r * std::cos(q.alpha);
            out.push_back({g, ach.point, m, Vec3{q.z.real() / h, q.z.imag() / h, std::tan(q.alpha)}});
        }
    return out;
}

TilingReport verify_tiling(const LiftedGroup& group, const OrbitAtlas& atlas, const PolyComplex& complex,
                           const TilingOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int window = window_for_argument(options.max_abs_alpha, group.theta);
    TilingReport rep;
    for (std::size_t s = 0; s < options.samples; ++s) {
        const double rad = options.max_abs_z * std::sqrt(unit(rng));
        const double phi = 2.0 * kPi * unit(rng);
        const double alpha = options.max_abs_alpha * (2.0 * unit(rng) - 1.0);
        const Complex z = std::polar(rad, phi);
        const GroupElement a{z, alpha, std::sqrt(1.0 + std::norm(z))};
        const auto wit = tiling_witnesses(group, atlas, a, window);
        ++rep.samples;
        rep.max_achievers = std::max(rep.max_achievers, wit.size());
        bool covered = false;
        std::size_t interior = 0;
        for (const CoverWitness& w : wit) {
            const Location loc = locate(complex, w.chart, 1e-9);
            if (loc.inside || loc.boundary_distance <= options.shell) covered = true;
            if (loc.inside && loc.boundary_distance > options.shell) ++interior;
        }
        if (covered) ++rep.covered;
        if (interior >= 2) ++rep.double_interior;
    }
    return rep;
}

double chart_volume(const PolyComplex& complex) {
    double v = 0.0;
    for (const ConvexCell& c : complex.cells) v += c.volume();
    return v;
}

namespace {

void integrate_refined(const std::array<Vec3, 4>& t, const std::function<double(const Vec3&)>& f, int depth,
                       double& acc) {
    double longest = 0.0;
    int ia = 0, ib = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double l = norm(t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(j)]);
            if (l > longest) {
                longest = l;
                ia = i;
                ib = j;
            }
        }
    if (depth <= 0 || longest < 0.08) {
        acc += integrate_tetrahedron(t, f, 3);
        return;
    }
    const Vec3 mid = (t[static_cast<std::size_t>(ia)] + t[static_cast<std::size_t>(ib)]) * 0.5;
    std::array<Vec3, 4> a = t, b = t;
    a[static_cast<std::size_t>(ia)] = mid;
    b[static_cast<std::size_t>(ib)] = mid;
    integrate_refined(a, f, depth - 1, acc);
    integrate_refined(b, f, depth - 1, acc);
}

}  // namespace

double invariant_volume(const PolyComplex& complex) {
    const auto density = [](const Vec3& v) {
        const double q = 1.0 + v.z * v.z - v.x * v.x - v.y * v.y;
        return 1.0 / (q * q);
    };
    double acc = 0.0;
    for (const ConvexCell& c : complex.cells)
        for (const auto& t : c.tetrahedra()) integrate_refined(t, density, 12, acc);
    return acc;
}

double expected_invariant_volume(const LiftedGroup& group) {
    return 0.5 * kPi * kPi * group.level * group.signature.defect();
}

double rotation_residual(const PolyComplex& complex, double angle) {
    const Complex rot = std::polar(1.0, angle);
    std::vector<Vec3> img;
    for (const Vec3& v : complex.vertices) {
        const Complex z = rot * zof(v);
        img.push_back({z.real(), z.imag(), v.z});
    }
    return hausdorff(complex.vertices, img);
}

double reflection_residual(const PolyComplex& complex) {
    const auto& vs = complex.vertices;
    if (vs.empty()) return 0.0;
    // Reference vertex: the one farthest from the axis.
    std::size_t ref = 0;
    for (std::size_t i = 1; i < vs.size(); ++i)
        if (std::abs(zof(vs[i])) > std::abs(zof(vs[ref]))) ref = i;
    const Complex z0 = zof(vs[ref]);
    double best = kInfinity;
    for (const Vec3& target : vs) {
        if (std::abs(std::abs(zof(target)) - std::abs(z0)) > 1e-6) continue;
        const Complex rot = zof(target) / std::conj(z0);
        for (int sign : {1, -1}) {
            if (std::abs(target.z - sign * vs[ref].z) > 1e-6) continue;
            std::vector<Vec3> img;
            for (const Vec3& v : vs) {
                const Complex z = rot * std::conj(zof(v));
                img.push_back({z.real(), z.imag(), sign * v.z});
            }
            best = std::min(best, hausdorff(vs, img));
        }
    }
    return best;
}

bool Mesh::is_closed() const {
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : triangles)
        for (int i = 0; i < 3; ++i) ++count[{t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>((i + 1) % 3)]}];
    for (const auto& [e, c] : count) {
        if (c != 1) return false;
        const auto it = count.find({e.second, e.first});
        if (it == count.end() || it->second != 1) return false;
    }
    return true;
}

int Mesh::euler_characteristic() const {
    std::set<std::pair<int, int>> edges;
    std::set<int> used;
    for (const auto& t : triangles)
        for (int i = 0; i < 3; ++i) {
            const int a = t[static_cast<std::size_t>(i)], b = t[static_cast<std::size_t>((i + 1) % 3)];
            edges.insert({std::min(a, b), std::max(a, b)});
            used.insert(a);
        }
    return static_cast<int>(used.size()) - static_cast<int>(edges.size()) + static_cast<int>(triangles.size());
}

Mesh euclideanize(const PolyComplex& complex, double) {
    Mesh mesh;
    mesh.vertices = complex.boundary_points;
    for (std::size_t li = 0; li < complex.boundary_loops.size(); ++li) {
        const auto& loop = complex.boundary_loops[li];
        Vec3 c;
        for (int v : loop) c += complex.boundary_points[static_cast<std::size_t>(v)];
        c = c / static_cast<double>(loop.size());
        const int ci = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(c);
        for (std::size_t i = 0; i < loop.size(); ++i) {
            mesh.triangles.push_back({ci, loop[i], loop[(i + 1) % loop.size()]});
            mesh.triangle_face.push_back(complex.loop_face[li]);
        }
    }
    return mesh;
}

}  // namespace lfd

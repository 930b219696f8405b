#include "lfd/halfspaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfd/error.hpp"

namespace lfd {

TangencyValue tangency(const GroupElement& g, const CoverPoint& a) {
    const CoverPoint b = act(inverse(g), a);
    return {b.r * std::cos(b.alpha), b.alpha};
}

bool in_I(const HalfSpaceHandle& h, const CoverPoint& a, double tol) {
    const TangencyValue v = tangency(h.g, a);
    return v.in_window() && v.value >= 1.0 - tol;
}

bool in_H(const HalfSpaceHandle& h, const CoverPoint& a, double tol) {
    const TangencyValue v = tangency(h.g, a);
    return !v.in_window() || v.value <= 1.0 + tol;
}

bool on_E(const HalfSpaceHandle& h, const CoverPoint& a, double tol) {
    const TangencyValue v = tangency(h.g, a);
    return v.in_window() && std::abs(v.value - 1.0) <= tol;
}

ChartPoint chart_to(const CoverPoint& a, double tol) {
    if (!on_E({GroupElement::identity()}, a, tol))
        throw Error(ErrorKind::NotOnFace, "point is not on E_e");
    return {a.z, std::tan(a.alpha)};
}

CoverPoint chart_from(const ChartPoint& c) {
    if (!chart_in_cone(c)) throw Error(ErrorKind::InvalidPoint, "chart point lies outside the cone");
    return {c.z, std::atan(c.t), std::sqrt(1.0 + c.t * c.t)};
}

int window_for_argument(double max_abs_alpha, double theta) {
    return static_cast<int>(std::ceil((max_abs_alpha + kPi) / theta)) + 1;
}

GroupElement PrismHandle::element(int m) const { return mul(rep, power(rd, m)); }

PrismHandle make_prism(const LiftedGroup& group, const OrbitPoint& point, int window) {
    return {point.x, point.rep, group.rd, group.theta, window};
}

PrismSide prism_membership(const PrismHandle& q, const CoverPoint& a, double tol) {
    bool touches = false;
    for (int m = -q.window; m <= q.window; ++m) {
        const TangencyValue v = tangency(q.element(m), a);
        if (!v.in_window()) continue;
        if (v.value > 1.0 + tol) return PrismSide::Exterior;
        if (v.value >= 1.0 - tol) touches = true;
    }
    return touches ? PrismSide::Boundary : PrismSide::Interior;
}

SectionValue prism_section_detail(const PrismHandle& q, const GroupElement& a) {
    SectionValue out;
    for (int m = -q.window; m <= q.window; ++m) {
        const TangencyValue v = tangency(q.element(m), a);
        if (!v.in_window() || v.value <= 0.0) continue;
        const double bound = 1.0 / v.value;
        if (bound < out.value) {
            out.value = bound;
            out.binding = m;
        }
    }
    return out;
}

BoundarySection boundary_section(const LiftedGroup& group, const OrbitAtlas& atlas,
                                 const GroupElement& a, int window, double tie_tol) {
    if (atlas.points.empty()) throw Error(ErrorKind::EmptyAtlas, "atlas has no points");
    // Heights lambda with lambda * a in Q_x obey lambda (r - |z|) <= f(|x|), and the
    // atlas is sorted by decreasing f, so the scan can stop early.
    const double margin = a.r - std::abs(a.z);
    struct Candidate {
        std::size_t point;
        SectionValue s;
    };
    std::vector<Candidate> found;
    double best = 0.0;
    for (std::size_t i = 0; i < atlas.points.size(); ++i) {
        const double cap = atlas.points[i].f / margin;
        if (cap < best * (1.0 - tie_tol)) break;
        const SectionValue s = prism_section_detail(make_prism(group, atlas.points[i], window), a);
        if (s.value >= best * (1.0 - tie_tol)) {
            found.push_back({i, s});
            best = std::max(best, s.value);
        }
    }
    BoundarySection out;
    out.value = best;
    for (const Candidate& c : found)
        if (c.s.value >= best * (1.0 - tie_tol)) out.achievers.push_back({c.point, c.s.binding});
    return out;
}

std::vector<Complex> star_polygon(int p, int k) {
    if (!(k >= 1 && p > k && std::gcd(p, k) == 1))
        throw Error(ErrorKind::InvalidArgument, "star polygon needs p > k >= 1 and gcd(p, k) = 1");
    const double theta = kPi * k / p;
    const double radius = 1.0 / std::cos(theta / 2.0);
    const int count = (k % 2 == 1) ? 2 * p : p;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) out.push_back(std::polar(radius, (n + 0.5) * theta));
    return out;
}

}  // namespace lfd

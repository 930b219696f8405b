#include "lfd/cover_group.hpp"

#include <algorithm>
#include <cmath>

#include "lfd/error.hpp"

namespace lfd {

namespace {

Complex lifted_w(const CoverPoint& a) { return std::polar(a.r, a.alpha); }

// Shared by mul and act: the image of (z_h, alpha_h, r_h) under g. The principal
// argument of 1 + q stays in (-pi/2, pi/2) because |q| < 1.
CoverPoint apply_lifted(const GroupElement& g, const CoverPoint& h) {
    const Complex wg = lifted_w(g);
    const Complex wh = lifted_w(h);
    const Complex q = std::conj(g.z) * h.z / (wg * wh);
    const Complex one_plus_q = 1.0 + q;
    CoverPoint out;
    out.z = std::conj(wg) * h.z + g.z * wh;
    out.alpha = g.alpha + h.alpha + std::arg(one_plus_q);
    out.r = g.r * h.r * std::abs(one_plus_q);
    return out;
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidPoint: return "invalid-point";
        case ErrorKind::SignatureNotHyperbolic: return "signature-not-hyperbolic";
        case ErrorKind::NotARelator: return "not-a-relator";
        case ErrorKind::NoAdmissibleFixedPoint: return "no-admissible-fixed-point";
        case ErrorKind::InvalidCutoff: return "invalid-cutoff";
        case ErrorKind::NotOnFace: return "not-on-face";
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::EmptyAtlas: return "empty-atlas";
        case ErrorKind::CutoffTooLarge: return "cutoff-too-large";
        case ErrorKind::NonCompact: return "non-compact";
        case ErrorKind::PairingIncomplete: return "pairing-incomplete";
        case ErrorKind::InvalidConfig: return "invalid-config";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

double bilinear_form(const PseudoVector& a, const PseudoVector& b) {
    return std::real(a.z * std::conj(b.z) - a.w * std::conj(b.w));
}

PseudoVector project_pi(const CoverPoint& a) { return {a.z, lifted_w(a)}; }

GroupElement section_s(const CoverPoint& a) {
    const double lambda = std::sqrt(a.r * a.r - std::norm(a.z));
    return {a.z / lambda, a.alpha, a.r / lambda};
}

PseudoVector radial_projection(const PseudoVector& a) {
    const double lambda = std::sqrt(-bilinear_form(a, a));
    return {a.z / lambda, a.w / lambda};
}

CoverPoint lift_near(const PseudoVector& a, double alpha_hint) {
    const double principal = std::arg(a.w);
    const double turns = std::round((alpha_hint - principal) / (2.0 * kPi));
    return {a.z, principal + 2.0 * kPi * turns, std::abs(a.w)};
}

GroupElement mul(const GroupElement& g, const GroupElement& h) {
    return section_s(apply_lifted(g, h));
}

GroupElement inverse(const GroupElement& g) { return {-g.z, -g.alpha, g.r}; }

CoverPoint act(const GroupElement& g, const CoverPoint& a) { return apply_lifted(g, a); }

GroupElement power(const GroupElement& g, std::int64_t n) {
    GroupElement base = n < 0 ? inverse(g) : g;
    std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    GroupElement acc = GroupElement::identity();
    while (e != 0) {
        if (e & 1U) acc = mul(acc, base);
        e >>= 1U;
        if (e != 0) base = mul(base, base);
    }
    return acc;
}

GroupElement rotation_r0(double t) { return {Complex{0.0, 0.0}, -t / 2.0, 1.0}; }

GroupElement translation_to(Complex x) {
    const double n = std::norm(x);
    if (!(n < 1.0)) throw Error(ErrorKind::InvalidPoint, "point must lie in the open unit disk");
    const double c = 1.0 / std::sqrt(1.0 - n);
    return {x * c, 0.0, c};
}

GroupElement rotation_rx(Complex x, double t) {
    const GroupElement g = translation_to(x);
    return mul(mul(g, rotation_r0(t)), inverse(g));
}

GroupElement central_power(std::int64_t m) {
    return {Complex{0.0, 0.0}, -static_cast<double>(m) * kPi, 1.0};
}

PseudoVector su11_product(const PseudoVector& g, const PseudoVector& h) {
    return {std::conj(g.w) * h.z + g.z * h.w, g.w * h.w + std::conj(g.z) * h.z};
}

Complex mobius(const PseudoVector& g, Complex xi) {
    return (std::conj(g.w) * xi + g.z) / (std::conj(g.z) * xi + g.w);
}

double element_distance(const GroupElement& g, const GroupElement& h) {
    return std::max({std::abs(g.z - h.z), std::abs(g.alpha - h.alpha), std::abs(g.r - h.r)});
}

double vector_distance(const PseudoVector& a, const PseudoVector& b) {
    return std::max(std::abs(a.z - b.z), std::abs(a.w - b.w));
}

bool is_central(const GroupElement& g, double tol) {
    const double k = g.alpha / kPi;
    return std::abs(g.z) <= tol && std::abs(k - std::round(k)) <= tol;
}

double disk_distance(Complex a, Complex b) {
    const double ratio = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
    return 2.0 * std::atanh(std::min(ratio, 1.0 - 1e-16));
}

}  // namespace lfd

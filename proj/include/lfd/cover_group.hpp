#pragma once

// Arithmetic in E^{2,2} = C^2 with the form Re(z1 conj(z2) - w1 conj(w2)),
// the quadric G = {<a,a> = -1} identified with SU(1,1), the cone L over it, and
// the universal covers G~ and L~ in (z, alpha, r) coordinates.

#include <complex>
#include <cstdint>
#include <numbers>

namespace lfd {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
/// Equality tolerance for geometric predicates.
inline constexpr double kGeomTol = 1e-9;
/// Tolerance for algebraic normalization.
inline constexpr double kAlgTol = 1e-12;

/// A vector (z, w) of E^{2,2}.
struct PseudoVector {
    Complex z;
    Complex w;
};

/// A point (z, alpha, r) of L~: z complex, alpha the lifted argument of w, r = |w| > |z|.
struct CoverPoint {
    Complex z;
    double alpha = 0.0;
    double r = 1.0;
};

/// A point of G~ = {|z|^2 = r^2 - 1} inside L~. Identity is (0, 0, 1).
struct GroupElement {
    Complex z;
    double alpha = 0.0;
    double r = 1.0;

    static GroupElement identity() { return {}; }

    operator CoverPoint() const { return {z, alpha, r}; }
};

double bilinear_form(const PseudoVector& a, const PseudoVector& b);

inline bool in_quadric(const PseudoVector& a, double tol = kGeomTol) {
    return std::abs(bilinear_form(a, a) + 1.0) <= tol;
}

inline bool in_cone(const PseudoVector& a) { return std::abs(a.z) < std::abs(a.w); }

/// pi(z, alpha, r) = (z, r e^{i alpha}).
PseudoVector project_pi(const CoverPoint& a);

/// Radial projection s onto G~: (z/l, alpha, r/l), l = sqrt(r^2 - |z|^2).
GroupElement section_s(const CoverPoint& a);

/// Radial projection of a cone vector onto G: a / sqrt(-<a,a>).
PseudoVector radial_projection(const PseudoVector& a);

/// Lift of the linear point (z, w) with |z| < |w| to the sheet whose argument is
/// closest to `alpha_hint`.
CoverPoint lift_near(const PseudoVector& a, double alpha_hint);

GroupElement mul(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

/// Lifted left action of G~ on L~.
CoverPoint act(const GroupElement& g, const CoverPoint& a);

/// Positive scaling along the fibre of L~ -> G~.
inline CoverPoint scale(const CoverPoint& a, double lambda) {
    return {a.z * lambda, a.alpha, a.r * lambda};
}

/// g^n by repeated squaring (n may be negative).
GroupElement power(const GroupElement& g, std::int64_t n);

/// Lifted rotation through angle t about the origin: r_0(t) = (0, -t/2, 1).
GroupElement rotation_r0(double t);

/// Positive hyperbolic translation along the geodesic from 0 to x (moves 0 to x).
GroupElement translation_to(Complex x);

/// Lifted rotation through angle t about x in the unit disk.
GroupElement rotation_rx(Complex x, double t);

/// z0^m with z0 = r_0(2 pi) = (0, -pi, 1).
GroupElement central_power(std::int64_t m);

/// SU(1,1) product of projected elements: w = w1 w2 + conj(z1) z2, z = conj(w1) z2 + z1 w2.
PseudoVector su11_product(const PseudoVector& g, const PseudoVector& h);

/// Linear action of SU(1,1) on C^2 (the same formula as the product).
inline PseudoVector su11_apply(const PseudoVector& g, const PseudoVector& a) {
    return su11_product(g, a);
}

/// Mobius action on the unit disk: xi -> (conj(w) xi + z) / (conj(z) xi + w).
Complex mobius(const PseudoVector& g, Complex xi);
inline Complex mobius(const GroupElement& g, Complex xi) { return mobius(project_pi(g), xi); }

/// Image of the origin, g(0) = z / w.
inline Complex orbit_point(const GroupElement& g) {
    return mobius(g, Complex{0.0, 0.0});
}

/// Max-norm distance between two elements in (z, alpha, r) coordinates.
double element_distance(const GroupElement& g, const GroupElement& h);
double vector_distance(const PseudoVector& a, const PseudoVector& b);

/// True if g projects to +-identity in SU(1,1) and its argument is a multiple of pi.
bool is_central(const GroupElement& g, double tol = 1e-6);

/// Hyperbolic distance (curvature -1) in the Poincare disk.
double disk_distance(Complex a, Complex b);

}  // namespace lfd

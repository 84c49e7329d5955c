#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "envlie/quadric.hpp"
#include "envlie/tangent_map.hpp"

namespace envlie {

/// Derivative surface h of a cone system at one instant, reduced to the span
/// {x, y, z, xz, yz}. k holds the coefficients in that order; an all-zero k is
/// rejected (it signals a stationary instant upstream).
struct ConeDerivativeSurface {
    std::array<Rat, 5> k;
    Rat r;

    ConeDerivativeSurface(std::array<Rat, 5> k_in, Rat r_in);

    /// N(u) = k1 r u^2 - 2 k2 r u - k1 r + k3 u^2 + k3.
    Polynomial numerator_quadratic() const;
    /// D(u) = k4 u^2 - 2 k5 u - k4.
    Polynomial pole_quadratic() const;
};

/// Space curve in homogeneous coordinates (X : Y : Z : W), each a polynomial
/// in u of degree <= 4. Normalized so the four polynomials share no common
/// polynomial factor or rational content, with a canonical sign.
class HomogRationalCurve {
public:
    HomogRationalCurve(Polynomial W, Polynomial X, Polynomial Y, Polynomial Z);

    const Polynomial& W() const { return w_; }
    const Polynomial& X() const { return x_; }
    const Polynomial& Y() const { return y_; }
    const Polynomial& Z() const { return z_; }

    /// Common homogeneous degree (the maximum of the four degrees).
    int homog_degree() const;

    /// Exact affine point; throws errc::pole when W(u) = 0.
    Vec3<Rat> eval_affine(const Rat& u) const;
    Vec3<double> eval_affine(double u) const;
    /// Evaluation at the projective parameter (sin theta : cos theta), which
    /// stays finite through u = infinity; u = tan(theta).
    Vec3<double> eval_angle(double theta) const;

    bool operator==(const HomogRationalCurve& o) const = default;

private:
    Polynomial w_, x_, y_, z_;
};

enum class ConeCharKind {
    rational,          ///< Theorem-2 generic case, cone_char_param applies
    ruling_degenerate, ///< k1 = k2 = k3 = 0: h = z (k4 x + k5 y), two rulings
    plane_degenerate,  ///< (k4, k5) = 0: h is a plane through the apex
};

ConeCharKind classify_cone_char(const ConeDerivativeSurface& d);

/// Exact rational parameterization of {cone(r) = 0} ∩ {h = 0}:
///   W = r (u^2+1) D,  X = -r (u^2-1) N,  Y = 2 r u N,  Z = -(u^2+1) N.
/// Throws errc::degenerate_ruling / errc::degenerate_plane in the degenerate
/// classes (use cone_rulings there).
HomogRationalCurve cone_char_param(const ConeDerivativeSurface& d);

/// Lines through the apex making up the characteristic in the degenerate
/// classes. Directions are unit-free (line is s * direction, s real).
struct ApexRulings {
    std::vector<Vec3<double>> directions;
    bool apex_only = false; ///< intersection is the apex point alone
};
ApexRulings cone_rulings(const ConeDerivativeSurface& d);

/// Intersection of the unit sphere with an affine plane h = 0 (h must have no
/// quadratic part; reduce modulo the sphere first). The circle case carries an
/// exact rational parameterization whenever a rational point exists on the
/// circle; irrational circles keep the exact center/radius data only.
struct SphereSection {
    enum class Kind { circle, point, empty } kind = Kind::empty;
    std::optional<HomogRationalCurve> curve; ///< set for circles with a rational point
    Vec3<Rat> point{};                       ///< the tangency point (Kind::point)
    Vec3<Rat> center{};                      ///< exact circle center (Kind::circle)
    Rat radius_sq{};                         ///< exact squared radius (Kind::circle)
};
SphereSection sphere_char_circle(const Quadric& h);

/// Numerically sampled curve branch with per-point residuals against the two
/// defining quadrics, recorded at creation time.
struct SampledCurve {
    std::vector<Vec3<double>> points;
    std::vector<std::pair<double, double>> residuals;
    double tol = 0.0;
    bool closed = false;
    Vec3<double> seed{};
};

/// Proposition-1 derivative surface h with chi_t = g_t({qbar = 0} ∩ {h = 0}).
/// Throws errc::stationary_instant when h vanishes identically.
Quadric derivative_surface(const Quadric& qbar, const RationalMotion& m, const Rat& t0);

/// Derivative surface of the scaled family lambda(t) * (qbar o g_t^-1),
/// expressed in the elementary frame. With lambda = 1 this equals
/// derivative_surface and provides an independent route to it.
Quadric derivative_surface_scaled(const Quadric& qbar, const RationalMotion& m,
                                  const RationalFunction& lambda, const Rat& t0);

/// Push a curve to the world frame: homogeneous coordinates multiplied by g.
HomogRationalCurve map_curve(const HomogRationalCurve& c, const GroupElement& g);
SampledCurve map_curve(const SampledCurve& c, const GroupElement& g);

/// Symbolic Theorem-2 data of a cone system: k_i(t) as rational functions.
/// Requires an SE3 motion (rigid cone motion); the reduction modulo the cone
/// quadric must leave the {x,y,z,xz,yz} span, which is checked symbolically.
struct ConeCharFamily {
    std::array<RationalFunction, 5> k;
    Rat r;

    /// Instant data; throws errc::stationary_instant when k(t0) = 0.
    ConeDerivativeSurface at(const Rat& t0) const;
};
ConeCharFamily cone_char_family(const Rat& r, const RationalMotion& m,
                                const RationalFunction& lambda = RationalFunction(Rat(1)));

/// Rational Bezier form of the curve restricted to [u0, u1], as homogeneous
/// control points (w x, w y, w z, w). Throws errc::pole when W has a root in
/// the closed interval.
struct RationalBezier {
    int degree = 0;
    std::vector<std::array<Rat, 4>> control;

    std::array<Rat, 4> de_casteljau(const Rat& v) const;
    Vec3<Rat> eval_affine(const Rat& v) const;
};
RationalBezier curve_to_bezier(const HomogRationalCurve& c, const Rat& u0, const Rat& u1);

} // namespace envlie

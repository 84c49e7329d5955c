#pragma once

#include "envlie/group.hpp"
#include "envlie/rational_fn.hpp"

namespace envlie {

/// Smooth lift t -> g_t: a 4x4 matrix of rational functions with exact group
/// membership as rational-function identities, pole-free on the closed domain.
///
/// Construction validates everything symbolically (not by sampling): the last
/// row is (0,0,0,1), no entry denominator has a root in [t_lo, t_hi], and for
/// SE3 the identities R^T R = I, det R = 1 hold in the function field.
class RationalMotion {
public:
    RationalMotion(Mat4<RationalFunction> entries, Rat t_lo, Rat t_hi, GroupTag tag);

    const Mat4<RationalFunction>& entries() const { return g_; }
    GroupTag tag() const { return tag_; }
    const Rat& t_lo() const { return t_lo_; }
    const Rat& t_hi() const { return t_hi_; }
    bool contains(const Rat& t) const { return t >= t_lo_ && t <= t_hi_; }

    GroupElement eval(const Rat& t0) const;

    /// Entrywise symbolic derivative g'(t).
    const Mat4<RationalFunction>& derivative_fn() const { return dg_; }
    /// g(t)^-1 as rational functions.
    const Mat4<RationalFunction>& inverse_fn() const { return ginv_; }
    /// Body velocity gamma'(t) = g(t)^-1 g'(t), computed once symbolically.
    const Mat4<RationalFunction>& body_velocity_fn() const { return vel_; }

    /// gamma'(t0) as a validated algebra element (skew block for SE3).
    AlgebraElement body_velocity(const Rat& t0) const;

    static RationalMotion constant(const GroupElement& g, Rat t_lo, Rat t_hi);
    static RationalMotion translation(RationalFunction x, RationalFunction y, RationalFunction z,
                                      Rat t_lo, Rat t_hi, GroupTag tag = GroupTag::SE3);
    /// Rotation about a coordinate axis with rational Cayley parameter s(t).
    static RationalMotion cayley_rotation(int axis, const RationalFunction& s, Rat t_lo, Rat t_hi);
    /// Uniform scaling by rho(t) (Aff3); rho must not vanish on the domain.
    static RationalMotion uniform_scaling(const RationalFunction& rho, Rat t_lo, Rat t_hi);
    /// Shear with unit direction pair (row, col), row != col, rate s(t) (Aff3).
    static RationalMotion shear(int row, int col, const RationalFunction& s, Rat t_lo, Rat t_hi);

private:
    Mat4<RationalFunction> g_, dg_, ginv_, vel_;
    Rat t_lo_, t_hi_;
    GroupTag tag_;
};

/// Pointwise product (m1 m2)(t) = m1(t) m2(t); the domains must coincide.
/// Result is SE3 only when both factors are SE3.
RationalMotion compose(const RationalMotion& m1, const RationalMotion& m2);

/// Constant left factor: t -> h * m(t).
RationalMotion compose(const GroupElement& h, const RationalMotion& m);

} // namespace envlie

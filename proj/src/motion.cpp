#include "envlie/motion.hpp"

#include "envlie/roots.hpp"

namespace envlie {

namespace {

const RationalFunction kOne(Rat(1));

Mat4<RationalFunction> entrywise_derivative(const Mat4<RationalFunction>& g) {
    Mat4<RationalFunction> d;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d(i, j) = g(i, j).derivative();
    return d;
}

Mat4<RationalFunction> se3_inverse_fn(const Mat4<RationalFunction>& g) {
    Mat4<RationalFunction> inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv(i, j) = g(j, i);
    for (int i = 0; i < 3; ++i) {
        RationalFunction acc = inv(i, 0) * g(0, 3) + inv(i, 1) * g(1, 3) + inv(i, 2) * g(2, 3);
        inv(i, 3) = -acc;
    }
    inv(3, 3) = kOne;
    return inv;
}

} // namespace

RationalMotion::RationalMotion(Mat4<RationalFunction> entries, Rat t_lo, Rat t_hi, GroupTag tag)
    : g_(std::move(entries)), t_lo_(std::move(t_lo)), t_hi_(std::move(t_hi)), tag_(tag) {
    if (t_lo_ > t_hi_) fail(errc::invalid_input, "motion domain: t_lo > t_hi");
    if (!g_(3, 0).is_zero() || !g_(3, 1).is_zero() || !g_(3, 2).is_zero() || !(g_(3, 3) == kOne))
        fail(errc::invalid_element, "motion: last row must be (0,0,0,1) identically");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j)
            if (has_root_in(g_(i, j).den(), t_lo_, t_hi_))
                fail(errc::pole, "motion entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") has a pole inside the domain");
    if (tag_ == GroupTag::SE3) {
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                RationalFunction acc =
                    g_(0, i) * g_(0, j) + g_(1, i) * g_(1, j) + g_(2, i) * g_(2, j);
                if (!(acc == RationalFunction(Rat(i == j ? 1 : 0))))
                    fail(errc::invalid_element, "motion: R^T R != I as a rational-function identity");
            }
        if (!(det3(g_) == kOne))
            fail(errc::invalid_element, "motion: det R != 1 as a rational-function identity");
        ginv_ = se3_inverse_fn(g_);
    } else {
        RationalFunction d = det3(g_);
        if (d.is_zero() || has_root_in(d.num(), t_lo_, t_hi_))
            fail(errc::invalid_element, "Aff3 motion: linear block is singular inside the domain");
        ginv_ = affine_inverse(g_);
    }
    dg_ = entrywise_derivative(g_);
    vel_ = ginv_ * dg_;
}

GroupElement RationalMotion::eval(const Rat& t0) const {
    if (!contains(t0))
        fail(errc::out_of_domain, "motion evaluated outside its domain, t = " + to_string(t0));
    Mat4<Rat> m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = g_(i, j).eval(t0);
    return GroupElement(std::move(m), tag_);
}

AlgebraElement RationalMotion::body_velocity(const Rat& t0) const {
    if (!contains(t0))
        fail(errc::out_of_domain, "body velocity outside the domain, t = " + to_string(t0));
    Mat4<Rat> m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = vel_(i, j).eval(t0);
    AlgebraElement gamma{std::move(m)};
    if (tag_ == GroupTag::SE3 && !gamma.has_skew_block())
        fail(errc::invalid_element, "body velocity fails se(3) skew-symmetry: invalid lift");
    return gamma;
}

RationalMotion RationalMotion::constant(const GroupElement& g, Rat t_lo, Rat t_hi) {
    Mat4<RationalFunction> e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = RationalFunction(g.matrix()(i, j));
    return RationalMotion(std::move(e), std::move(t_lo), std::move(t_hi), g.tag());
}

RationalMotion RationalMotion::translation(RationalFunction x, RationalFunction y,
                                           RationalFunction z, Rat t_lo, Rat t_hi, GroupTag tag) {
    Mat4<RationalFunction> e;
    for (int i = 0; i < 4; ++i) e(i, i) = kOne;
    e(0, 3) = std::move(x);
    e(1, 3) = std::move(y);
    e(2, 3) = std::move(z);
    return RationalMotion(std::move(e), std::move(t_lo), std::move(t_hi), tag);
}

RationalMotion RationalMotion::cayley_rotation(int axis, const RationalFunction& s, Rat t_lo,
                                               Rat t_hi) {
    if (axis < 0 || axis > 2) fail(errc::invalid_input, "rotation axis must be 0, 1 or 2");
    static constexpr int pair[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    const RationalFunction w = kOne + s * s;
    const RationalFunction c = (kOne - s * s) / w;
    const RationalFunction sn = (RationalFunction(Rat(2)) * s) / w;
    Mat4<RationalFunction> e;
    for (int i = 0; i < 4; ++i) e(i, i) = kOne;
    const int a = pair[axis][0], b = pair[axis][1];
    e(a, a) = c;
    e(a, b) = -sn;
    e(b, a) = sn;
    e(b, b) = c;
    return RationalMotion(std::move(e), std::move(t_lo), std::move(t_hi), GroupTag::SE3);
}

RationalMotion RationalMotion::uniform_scaling(const RationalFunction& rho, Rat t_lo, Rat t_hi) {
    Mat4<RationalFunction> e;
    e(0, 0) = e(1, 1) = e(2, 2) = rho;
    e(3, 3) = kOne;
    return RationalMotion(std::move(e), std::move(t_lo), std::move(t_hi), GroupTag::Aff3);
}

RationalMotion RationalMotion::shear(int row, int col, const RationalFunction& s, Rat t_lo,
                                     Rat t_hi) {
    if (row < 0 || row > 2 || col < 0 || col > 2 || row == col)
        fail(errc::invalid_input, "shear indices must be distinct and in 0..2");
    Mat4<RationalFunction> e;
    for (int i = 0; i < 4; ++i) e(i, i) = kOne;
    e(row, col) = s;
    return RationalMotion(std::move(e), std::move(t_lo), std::move(t_hi), GroupTag::Aff3);
}

RationalMotion compose(const RationalMotion& m1, const RationalMotion& m2) {
    if (m1.t_lo() != m2.t_lo() || m1.t_hi() != m2.t_hi())
        fail(errc::invalid_input, "compose: motion domains differ");
    const GroupTag tag =
        (m1.tag() == GroupTag::SE3 && m2.tag() == GroupTag::SE3) ? GroupTag::SE3 : GroupTag::Aff3;
    return RationalMotion(m1.entries() * m2.entries(), m1.t_lo(), m1.t_hi(), tag);
}

RationalMotion compose(const GroupElement& h, const RationalMotion& m) {
    Mat4<RationalFunction> hm;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) hm(i, j) = RationalFunction(h.matrix()(i, j));
    const GroupTag tag =
        (h.tag() == GroupTag::SE3 && m.tag() == GroupTag::SE3) ? GroupTag::SE3 : GroupTag::Aff3;
    return RationalMotion(hm * m.entries(), m.t_lo(), m.t_hi(), tag);
}

} // namespace envlie

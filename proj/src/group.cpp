#include "envlie/group.hpp"

namespace envlie {

namespace {

bool last_row_is(const Mat4<Rat>& m, const Rat& corner) {
    return sgn(m(3, 0)) == 0 && sgn(m(3, 1)) == 0 && sgn(m(3, 2)) == 0 && m(3, 3) == corner;
}

bool rotation_block_ok(const Mat4<Rat>& m) {
    // R^T R == I, checked exactly
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Rat acc = m(0, i) * m(0, j) + m(1, i) * m(1, j) + m(2, i) * m(2, j);
            if (acc != (i == j ? 1 : 0)) return false;
        }
    return det3(m) == 1;
}

} // namespace

GroupElement::GroupElement(Mat4<Rat> m, GroupTag tag) : m_(std::move(m)), tag_(tag) {
    if (!last_row_is(m_, Rat(1)))
        fail(errc::invalid_element, "group element: last row must be (0,0,0,1)");
    if (tag_ == GroupTag::SE3) {
        if (!rotation_block_ok(m_))
            fail(errc::invalid_element, "SE3 element: rotation block fails R^T R = I, det R = 1");
    } else if (sgn(det3(m_)) == 0) {
        fail(errc::invalid_element, "Aff3 element: singular linear block");
    }
}

GroupElement GroupElement::identity(GroupTag tag) { return GroupElement(Mat4<Rat>::identity(), tag); }

GroupElement GroupElement::translation(const Rat& x, const Rat& y, const Rat& z, GroupTag tag) {
    Mat4<Rat> m = Mat4<Rat>::identity();
    m(0, 3) = x;
    m(1, 3) = y;
    m(2, 3) = z;
    return GroupElement(std::move(m), tag);
}

namespace {

// plane of rotation for each axis generator, matching the printed gamma_1..3:
// gamma_k acts on the pair (a,b) with entry (a,b) = -1, (b,a) = +1
constexpr int kRotPair[3][2] = {{1, 2}, {0, 2}, {0, 1}};

} // namespace

GroupElement GroupElement::cayley_rotation(int axis, const Rat& s) {
    if (axis < 0 || axis > 2) fail(errc::invalid_input, "rotation axis must be 0, 1 or 2");
    const Rat w = 1 + s * s;
    const Rat c = (1 - s * s) / w;
    const Rat sn = 2 * s / w;
    Mat4<Rat> m = Mat4<Rat>::identity();
    const int a = kRotPair[axis][0], b = kRotPair[axis][1];
    m(a, a) = c;
    m(a, b) = -sn;
    m(b, a) = sn;
    m(b, b) = c;
    return GroupElement(std::move(m), GroupTag::SE3);
}

GroupElement GroupElement::scaling(const Rat& sx, const Rat& sy, const Rat& sz) {
    if (sgn(sx) == 0 || sgn(sy) == 0 || sgn(sz) == 0)
        fail(errc::invalid_input, "scaling factors must be non-zero");
    Mat4<Rat> m = Mat4<Rat>::identity();
    m(0, 0) = sx;
    m(1, 1) = sy;
    m(2, 2) = sz;
    return GroupElement(std::move(m), GroupTag::Aff3);
}

GroupElement GroupElement::inverse() const {
    if (tag_ == GroupTag::SE3) {
        // (R, p)^-1 = (R^T, -R^T p)
        Mat4<Rat> inv;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) inv(i, j) = m_(j, i);
        for (int i = 0; i < 3; ++i) {
            Rat acc = inv(i, 0) * m_(0, 3) + inv(i, 1) * m_(1, 3) + inv(i, 2) * m_(2, 3);
            inv(i, 3) = -acc;
        }
        inv(3, 3) = 1;
        return GroupElement(std::move(inv), tag_);
    }
    return GroupElement(affine_inverse(m_), tag_);
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    if (g.tag() != h.tag())
        fail(errc::tag_mismatch, std::string("compose: tag mismatch (") + tag_name(g.tag()) + " vs " +
                                     tag_name(h.tag()) + ")");
    return GroupElement(g.matrix() * h.matrix(), g.tag());
}

AlgebraElement::AlgebraElement(Mat4<Rat> m) : m_(std::move(m)) {
    for (int j = 0; j < 4; ++j)
        if (sgn(m_(3, j)) != 0)
            fail(errc::invalid_element, "algebra element: last row must be zero");
}

AlgebraElement AlgebraElement::zero() { return AlgebraElement(Mat4<Rat>::zero()); }

bool AlgebraElement::is_zero() const { return m_ == Mat4<Rat>::zero(); }

bool AlgebraElement::has_skew_block() const {
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            if (sgn(Rat(m_(i, j) + m_(j, i))) != 0) return false;
    return true;
}

namespace {

AlgebraElement unit_entry(int r, int c) {
    Mat4<Rat> m;
    m(r, c) = 1;
    return AlgebraElement(std::move(m));
}

AlgebraElement rotation_generator(int axis) {
    Mat4<Rat> m;
    const int a = kRotPair[axis][0], b = kRotPair[axis][1];
    m(a, b) = -1;
    m(b, a) = 1;
    return AlgebraElement(std::move(m));
}

} // namespace

const std::array<AlgebraElement, 6>& se3_basis() {
    static const std::array<AlgebraElement, 6> basis = {
        rotation_generator(0), rotation_generator(1), rotation_generator(2),
        unit_entry(0, 3),      unit_entry(1, 3),      unit_entry(2, 3),
    };
    return basis;
}

const std::array<AlgebraElement, 12>& aff3_generators() {
    static const std::array<AlgebraElement, 12> gens = {
        unit_entry(0, 3), unit_entry(1, 3), unit_entry(2, 3), // translations
        unit_entry(0, 0), unit_entry(1, 1), unit_entry(2, 2), // expansions
        unit_entry(0, 1), unit_entry(0, 2), unit_entry(1, 2), // shears s1..s3
        unit_entry(1, 0), unit_entry(2, 0), unit_entry(2, 1), // shears s4..s6
    };
    return gens;
}

std::string generator_label(GroupTag tag, size_t index) {
    if (tag == GroupTag::SE3) {
        static const char* names[] = {"gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6"};
        return index < 6 ? names[index] : "?";
    }
    static const char* names[] = {"gamma4", "gamma5", "gamma6", "e1", "e2", "e3",
                                  "s1",     "s2",     "s3",     "s4", "s5", "s6"};
    return index < 12 ? names[index] : "?";
}

} // namespace envlie

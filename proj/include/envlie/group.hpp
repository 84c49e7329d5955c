#pragma once

#include <array>
#include <string>

#include "envlie/mat4.hpp"
#include "envlie/rational.hpp"

namespace envlie {

enum class GroupTag { SE3, Aff3 };

inline const char* tag_name(GroupTag t) { return t == GroupTag::SE3 ? "SE3" : "Aff3"; }

/// Element of SE(3) or Aff(3) as an exact homogeneous 4x4 matrix with last row
/// (0,0,0,1). Construction validates the group membership exactly: SE3 needs
/// R^T R = I and det R = 1, Aff3 an invertible linear block. Invalid matrices
/// are rejected, never projected.
class GroupElement {
public:
    GroupElement(Mat4<Rat> m, GroupTag tag);

    static GroupElement identity(GroupTag tag = GroupTag::SE3);
    static GroupElement translation(const Rat& x, const Rat& y, const Rat& z,
                                    GroupTag tag = GroupTag::SE3);
    /// Exact rotation about a coordinate axis (0=x, 1=y, 2=z) through the angle
    /// with tan(angle/2) = s: cos = (1-s^2)/(1+s^2), sin = 2s/(1+s^2).
    static GroupElement cayley_rotation(int axis, const Rat& s);
    /// diag(sx, sy, sz) scaling, an Aff3 element; factors must be non-zero.
    static GroupElement scaling(const Rat& sx, const Rat& sy, const Rat& sz);

    const Mat4<Rat>& matrix() const { return m_; }
    GroupTag tag() const { return tag_; }

    GroupElement inverse() const;
    Vec3<Rat> act_point(const Vec3<Rat>& p) const { return apply_affine(m_, p); }

    bool operator==(const GroupElement& o) const { return tag_ == o.tag_ && m_ == o.m_; }

private:
    Mat4<Rat> m_;
    GroupTag tag_;
};

/// Matrix product g*h; both operands must carry the same tag.
GroupElement compose(const GroupElement& g, const GroupElement& h);

/// Lie algebra element: 4x4 matrix with an all-zero last row. Note the usual
/// display of se(3) puts a 1 in the corner entry; the derivative of any curve
/// through the identity has 0 there, which is what this type enforces.
class AlgebraElement {
public:
    explicit AlgebraElement(Mat4<Rat> m);

    static AlgebraElement zero();

    const Mat4<Rat>& matrix() const { return m_; }
    bool is_zero() const;
    /// Exact skew-symmetry of the linear block (membership in se(3)).
    bool has_skew_block() const;

    AlgebraElement operator+(const AlgebraElement& o) const { return AlgebraElement(m_ + o.m_); }
    AlgebraElement operator*(const Rat& s) const { return AlgebraElement(m_ * s); }
    bool operator==(const AlgebraElement& o) const { return m_ == o.m_; }

private:
    Mat4<Rat> m_;
};

/// gamma_1..gamma_6: rotations about x,y,z then translations along x,y,z.
const std::array<AlgebraElement, 6>& se3_basis();

/// Generators of aff(3): translations x,y,z (0..2), axis expansions (3..5),
/// shears E01,E02,E12,E10,E20,E21 (6..11), matching the one-parameter subgroup
/// derivatives gamma_e1..e3, gamma_s1..s6 at t = 0.
const std::array<AlgebraElement, 12>& aff3_generators();

std::string generator_label(GroupTag tag, size_t index);

} // namespace envlie

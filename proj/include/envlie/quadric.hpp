#pragma once

#include <array>
#include <string_view>

#include "envlie/group.hpp"
#include "envlie/motion.hpp"

namespace envlie {

/// Coefficient basis order used everywhere, including serialization.
inline constexpr std::array<std::string_view, 10> kQuadricBasis = {
    "x^2", "y^2", "z^2", "xy", "xz", "yz", "x", "y", "z", "1"};

/// Quadratic form in x, y, z stored as a 10-vector over the fixed basis
/// {x^2, y^2, z^2, xy, xz, yz, x, y, z, 1}. Equivalently a symmetric 4x4
/// matrix M with Xt M X, X = (x,y,z,1); the xy coefficient equals 2*M01.
///
/// Scalar multiples are distinct values: no projective normalization happens
/// anywhere, scaling invariance is a property of the algorithms instead.
template <class S>
class BasicQuadric {
public:
    BasicQuadric() = default; // the zero sentinel
    explicit BasicQuadric(std::array<S, 10> c) : c_(std::move(c)) {}

    static BasicQuadric from_matrix(const Mat4<S>& m) {
        BasicQuadric q;
        q.c_ = {m(0, 0),
                m(1, 1),
                m(2, 2),
                m(0, 1) + m(1, 0),
                m(0, 2) + m(2, 0),
                m(1, 2) + m(2, 1),
                m(0, 3) + m(3, 0),
                m(1, 3) + m(3, 1),
                m(2, 3) + m(3, 2),
                m(3, 3)};
        return q;
    }

    Mat4<S> matrix() const {
        Mat4<S> m;
        const S two = S(2);
        m(0, 0) = c_[0];
        m(1, 1) = c_[1];
        m(2, 2) = c_[2];
        m(3, 3) = c_[9];
        m(0, 1) = m(1, 0) = c_[3] / two;
        m(0, 2) = m(2, 0) = c_[4] / two;
        m(1, 2) = m(2, 1) = c_[5] / two;
        m(0, 3) = m(3, 0) = c_[6] / two;
        m(1, 3) = m(3, 1) = c_[7] / two;
        m(2, 3) = m(3, 2) = c_[8] / two;
        return m;
    }

    const std::array<S, 10>& coeffs() const { return c_; }
    const S& operator[](size_t i) const { return c_[i]; }

    S eval(const Vec3<S>& p) const {
        return c_[0] * p.x * p.x + c_[1] * p.y * p.y + c_[2] * p.z * p.z + c_[3] * p.x * p.y +
               c_[4] * p.x * p.z + c_[5] * p.y * p.z + c_[6] * p.x + c_[7] * p.y + c_[8] * p.z +
               c_[9];
    }

    bool is_zero() const {
        for (const S& c : c_)
            if (!(c == S(0))) return false;
        return true;
    }

    BasicQuadric operator+(const BasicQuadric& o) const {
        std::array<S, 10> c;
        for (size_t i = 0; i < 10; ++i) c[i] = c_[i] + o.c_[i];
        return BasicQuadric(std::move(c));
    }

    BasicQuadric operator-(const BasicQuadric& o) const {
        std::array<S, 10> c;
        for (size_t i = 0; i < 10; ++i) c[i] = c_[i] - o.c_[i];
        return BasicQuadric(std::move(c));
    }

    BasicQuadric operator*(const S& s) const {
        std::array<S, 10> c;
        for (size_t i = 0; i < 10; ++i) c[i] = c_[i] * s;
        return BasicQuadric(std::move(c));
    }

    bool operator==(const BasicQuadric& o) const { return c_ == o.c_; }

private:
    std::array<S, 10> c_{};
};

using Quadric = BasicQuadric<Rat>;
using QuadricD = BasicQuadric<double>;

QuadricD to_double(const Quadric& q);
BasicQuadric<RationalFunction> to_rational_fn(const Quadric& q);

/// x^2 + y^2 - r^2 z^2, r > 0 (half-angle arctan(r) cone of revolution).
Quadric cone(const Rat& r);
/// x^2 + y^2 + z^2 - 1.
Quadric unit_sphere();
/// a x^2 + b y^2 - z, a, b != 0 (elliptic paraboloid; the coefficients are the
/// quadric coefficients, following the derivative-surface tables this feeds).
Quadric paraboloid(const Rat& a, const Rat& b);

/// phi(g) applied to a coefficient vector: the quadric with zero set
/// g(zero set of q), computed as M' = g^-T M g^-1.
Quadric pullback(const Quadric& q, const GroupElement& g);

/// Coefficients of f(x,y,z,t) = (qbar o g_t^-1) as rational functions of t.
std::array<RationalFunction, 10> pullback_family(const Quadric& qbar, const RationalMotion& m);

} // namespace envlie

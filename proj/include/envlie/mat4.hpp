#pragma once

#include <array>

#include "envlie/error.hpp"

namespace envlie {

template <class T>
struct Vec3 {
    T x{}, y{}, z{};

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(const T& s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Row-major 4x4 matrix over an exact or floating scalar ring.
template <class T>
class Mat4 {
public:
    Mat4() = default;

    static Mat4 zero() { return Mat4(); }

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(int r, int c) { return a_[static_cast<size_t>(r * 4 + c)]; }
    const T& operator()(int r, int c) const { return a_[static_cast<size_t>(r * 4 + c)]; }

    Mat4 operator*(const Mat4& o) const {
        Mat4 out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                T acc = (*this)(i, 0) * o(0, j);
                for (int k = 1; k < 4; ++k) acc += (*this)(i, k) * o(k, j);
                out(i, j) = std::move(acc);
            }
        return out;
    }

    Mat4 operator+(const Mat4& o) const {
        Mat4 out;
        for (size_t i = 0; i < 16; ++i) out.a_[i] = a_[i] + o.a_[i];
        return out;
    }

    Mat4 operator-(const Mat4& o) const {
        Mat4 out;
        for (size_t i = 0; i < 16; ++i) out.a_[i] = a_[i] - o.a_[i];
        return out;
    }

    Mat4 operator*(const T& s) const {
        Mat4 out;
        for (size_t i = 0; i < 16; ++i) out.a_[i] = a_[i] * s;
        return out;
    }

    Mat4 operator-() const {
        Mat4 out;
        for (size_t i = 0; i < 16; ++i) out.a_[i] = -a_[i];
        return out;
    }

    Mat4 transpose() const {
        Mat4 out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out(i, j) = (*this)(j, i);
        return out;
    }

    bool operator==(const Mat4& o) const { return a_ == o.a_; }

private:
    std::array<T, 16> a_{};
};

template <class T>
T det3(const Mat4<T>& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Inverse of an affine matrix (last row 0,0,0,1): [A,p]^-1 = [A^-1, -A^-1 p].
/// The 3x3 block is inverted by adjugate over determinant, so T must be a field.
template <class T>
Mat4<T> affine_inverse(const Mat4<T>& g) {
    const T d = det3(g);
    Mat4<T> inv;
    // adjugate of the upper-left block
    inv(0, 0) = (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) / d;
    inv(0, 1) = (g(0, 2) * g(2, 1) - g(0, 1) * g(2, 2)) / d;
    inv(0, 2) = (g(0, 1) * g(1, 2) - g(0, 2) * g(1, 1)) / d;
    inv(1, 0) = (g(1, 2) * g(2, 0) - g(1, 0) * g(2, 2)) / d;
    inv(1, 1) = (g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0)) / d;
    inv(1, 2) = (g(0, 2) * g(1, 0) - g(0, 0) * g(1, 2)) / d;
    inv(2, 0) = (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0)) / d;
    inv(2, 1) = (g(0, 1) * g(2, 0) - g(0, 0) * g(2, 1)) / d;
    inv(2, 2) = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) / d;
    for (int i = 0; i < 3; ++i) {
        T acc = inv(i, 0) * g(0, 3) + inv(i, 1) * g(1, 3) + inv(i, 2) * g(2, 3);
        inv(i, 3) = -std::move(acc);
    }
    inv(3, 3) = T(1);
    return inv;
}

template <class T>
Vec3<T> apply_affine(const Mat4<T>& g, const Vec3<T>& p) {
    return {g(0, 0) * p.x + g(0, 1) * p.y + g(0, 2) * p.z + g(0, 3),
            g(1, 0) * p.x + g(1, 1) * p.y + g(1, 2) * p.z + g(1, 3),
            g(2, 0) * p.x + g(2, 1) * p.y + g(2, 2) * p.z + g(2, 3)};
}

} // namespace envlie

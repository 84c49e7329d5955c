#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "envlie/rational.hpp"

namespace envlie {

/// Univariate polynomial with exact rational coefficients, stored in ascending
/// degree. Canonical form has no trailing zero coefficient; the zero polynomial
/// is the empty coefficient list.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(Rat c);
    static Polynomial variable();

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Coefficient of t^i; zero outside the stored range.
    const Rat& coeff(int i) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const;

    Rat eval(const Rat& t) const;
    double eval(double t) const;
    /// Homogeneous evaluation sum c_i s^i c^(d-i) for a chosen degree d >= degree().
    double eval_homog(double s, double c, int homog_degree) const;

    Polynomial derivative() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial operator*(const Rat& s) const;
    Polynomial operator/(const Rat& s) const;
    friend Polynomial operator*(const Rat& s, const Polynomial& p) { return p * s; }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    /// Composition with an affine map: p(a + b*u).
    Polynomial shift_scale(const Rat& a, const Rat& b) const;

    /// Euclidean division a = q*b + r with deg r < deg b. Returns false when b is zero.
    static bool divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r);

    /// Monic gcd; gcd(0,0) = 0.
    static Polynomial gcd(Polynomial a, Polynomial b);

    /// p / gcd(p, p'), monic except for the zero polynomial.
    Polynomial squarefree_part() const;

    std::string to_string(std::string_view var = "t") const;

private:
    void trim();
    std::vector<Rat> c_;
};

} // namespace envlie

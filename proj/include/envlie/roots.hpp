#pragma once

#include <vector>

#include "envlie/polynomial.hpp"

namespace envlie {

int sign_at(const Polynomial& p, const Rat& x);

/// Exact test for a real root of p in the closed interval [lo, hi], via sign
/// changes plus Descartes-style (Vincent) interval subdivision on the
/// square-free part. The zero polynomial counts as having roots everywhere.
bool has_root_in(const Polynomial& p, const Rat& lo, const Rat& hi);

/// Value a + b*sqrt(d) with rational a, b and rational d >= 0. Comparisons are
/// exact. Rational values are the b == 0 (or d == 0) case.
class Surd {
public:
    Surd() = default;
    Surd(Rat a) : a_(std::move(a)) {}
    Surd(long a) : a_(a) {}
    Surd(Rat a, Rat b, Rat d);

    const Rat& rational_part() const { return a_; }
    const Rat& radical_coeff() const { return b_; }
    const Rat& radicand() const { return d_; }

    bool is_rational() const { return sgn(b_) == 0; }
    /// Only valid when is_rational().
    const Rat& rational_value() const { return a_; }

    int sign() const;
    double approx() const;

    /// Three-way comparison, exact: sign of (*this - o).
    int cmp(const Surd& o) const;
    bool operator<(const Surd& o) const { return cmp(o) < 0; }
    bool operator>(const Surd& o) const { return cmp(o) > 0; }
    bool operator<=(const Surd& o) const { return cmp(o) <= 0; }
    bool operator>=(const Surd& o) const { return cmp(o) >= 0; }
    bool operator==(const Surd& o) const { return cmp(o) == 0; }

    /// Rational lower/upper bounds with |hi - lo| <= width.
    void bracket(Rat& lo, Rat& hi, const Rat& width) const;

private:
    Rat a_{0}, b_{0}, d_{0};
};

/// Real roots of a*u^2 + b*u + c in ascending order, handling every degeneracy
/// of degree. A vanishing polynomial is reported with all_zero.
struct QuadraticRoots {
    int count = 0;
    bool all_zero = false;
    Surd root[2];
};
QuadraticRoots real_roots_quadratic(const Rat& a, const Rat& b, const Rat& c);

/// A rational strictly between lo and hi (requires lo < hi exactly).
Rat rational_between(const Surd& lo, const Surd& hi);

} // namespace envlie

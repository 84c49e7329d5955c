#pragma once

#include <string>
#include <string_view>

#include "envlie/polynomial.hpp"

namespace envlie {

/// Univariate rational function num/den over exact rationals.
///
/// Canonical form: gcd(num, den) = 1 and den is monic, so two constructions of
/// the same function compare equal coefficient-by-coefficient.
class RationalFunction {
public:
    RationalFunction() : den_{Rat(1)} {}
    RationalFunction(long value) : RationalFunction(Rat(value)) {}
    RationalFunction(Rat value) : num_(Polynomial::constant(std::move(value))), den_{Rat(1)} {}
    RationalFunction(Polynomial num) : num_(std::move(num)), den_{Rat(1)} {}
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    /// Exact evaluation; throws errc::pole when den(t) = 0.
    Rat eval(const Rat& t) const;
    double eval(double t) const;

    RationalFunction derivative() const;

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    /// Throws errc::zero_division when o is the zero function.
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string(std::string_view var = "t") const;

private:
    void canonicalize();
    Polynomial num_;
    Polynomial den_;
};

} // namespace envlie

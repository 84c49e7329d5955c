#include "envlie/rational_fn.hpp"

#include "envlie/error.hpp"

namespace envlie {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(errc::zero_division, "rational function with zero denominator");
    canonicalize();
}

void RationalFunction::canonicalize() {
    if (num_.is_zero()) {
        den_ = Polynomial{Rat(1)};
        return;
    }
    Polynomial g = Polynomial::gcd(num_, den_);
    if (g.degree() > 0) {
        Polynomial q, r;
        Polynomial::divmod(num_, g, q, r);
        num_ = std::move(q);
        Polynomial::divmod(den_, g, q, r);
        den_ = std::move(q);
    }
    const Rat lc = den_.leading();
    if (lc != 1) {
        num_ = num_ / lc;
        den_ = den_ / lc;
    }
}

Rat RationalFunction::eval(const Rat& t) const {
    Rat d = den_.eval(t);
    if (sgn(d) == 0) fail(errc::pole, "rational function evaluated at a pole, t = " + envlie::to_string(t));
    return num_.eval(t) / d;
}

double RationalFunction::eval(double t) const { return num_.eval(t) / den_.eval(t); }

RationalFunction RationalFunction::derivative() const {
    // quotient rule; canonicalization strips the common factors
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) fail(errc::zero_division, "division by the zero function");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

std::string RationalFunction::to_string(std::string_view var) const {
    if (den_ == Polynomial{Rat(1)}) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

} // namespace envlie

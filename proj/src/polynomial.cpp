#include "envlie/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "envlie/error.hpp"

namespace envlie {

namespace {
const Rat kZero(0);
}

void Polynomial::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Polynomial Polynomial::constant(Rat c) {
    Polynomial p;
    if (sgn(c) != 0) p.c_.push_back(std::move(c));
    return p;
}

Polynomial Polynomial::variable() { return Polynomial{Rat(0), Rat(1)}; }

const Rat& Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(i)];
}

const Rat& Polynomial::leading() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

Rat Polynomial::eval(const Rat& t) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Polynomial::eval(double t) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
}

double Polynomial::eval_homog(double s, double c, int homog_degree) const {
    // Horner in s, accumulating the matching power of c: sum c_i s^i c^(d-i).
    double acc = 0.0, cpow = 1.0;
    for (int i = homog_degree; i >= 0; --i) {
        acc = acc * s + to_double(coeff(i)) * cpow;
        cpow *= c;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-() const {
    std::vector<Rat> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = -c_[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rat> d(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rat> d(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Rat& s) const {
    if (sgn(s) == 0) return {};
    std::vector<Rat> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] * s;
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator/(const Rat& s) const {
    if (sgn(s) == 0) fail(errc::zero_division, "polynomial divided by zero scalar");
    std::vector<Rat> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] / s;
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shift_scale(const Rat& a, const Rat& b) const {
    // Horner on the substituted argument keeps this quadratic in the degree.
    Polynomial arg{a, b};
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * arg + Polynomial::constant(*it);
    return acc;
}

bool Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q, Polynomial& r) {
    if (b.is_zero()) return false;
    std::vector<Rat> rem = a.c_;
    std::vector<Rat> quot;
    const int db = b.degree();
    if (a.degree() >= db) quot.assign(static_cast<size_t>(a.degree() - db) + 1, Rat(0));
    while (static_cast<int>(rem.size()) - 1 >= db) {
        while (!rem.empty() && sgn(rem.back()) == 0) rem.pop_back();
        if (static_cast<int>(rem.size()) - 1 < db) break;
        const int shift = static_cast<int>(rem.size()) - 1 - db;
        Rat f = rem.back() / b.leading();
        quot[static_cast<size_t>(shift)] = f;
        for (int i = 0; i <= db; ++i) rem[static_cast<size_t>(shift + i)] -= f * b.coeff(i);
        rem.pop_back();
    }
    q = Polynomial(std::move(quot));
    r = Polynomial(std::move(rem));
    return true;
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a / a.leading();
}

Polynomial Polynomial::squarefree_part() const {
    if (is_zero()) return {};
    Polynomial g = gcd(*this, derivative());
    if (g.degree() <= 0) {
        Polynomial p = *this / leading();
        return p;
    }
    Polynomial q, r;
    divmod(*this, g, q, r);
    return q / q.leading();
}

std::string Polynomial::to_string(std::string_view var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Rat& c = coeff(i);
        if (sgn(c) == 0) continue;
        if (!out.empty()) out += sgn(c) > 0 ? " + " : " - ";
        else if (sgn(c) < 0) out += "-";
        Rat a = rat_abs(c);
        const bool unit = (a == 1) && i > 0;
        if (!unit) out += envlie::to_string(a);
        if (i > 0) {
            if (!unit) out += "*";
            out += std::string(var);
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace envlie

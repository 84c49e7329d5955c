#include "envlie/roots.hpp"

#include <cmath>

#include "envlie/error.hpp"

namespace envlie {

int sign_at(const Polynomial& p, const Rat& x) { return sgn(p.eval(x)); }

namespace {

int sign_variations(const Polynomial& p) {
    int v = 0, last = 0;
    for (const Rat& c : p.coeffs()) {
        const int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

Polynomial reverse_to_degree(const Polynomial& p, int n) {
    std::vector<Rat> rc(static_cast<size_t>(n) + 1, Rat(0));
    for (int i = 0; i <= p.degree(); ++i) rc[static_cast<size_t>(n - i)] = p.coeff(i);
    return Polynomial(std::move(rc));
}

/// Descartes bound on the number of roots in the open interval (a, b):
/// sign variations of (1+x)^n p((a + b x)/(1 + x)).
int descartes_count(const Polynomial& p, const Rat& a, const Rat& b) {
    Polynomial pab = p.shift_scale(a, b - a); // roots in (a,b) <-> (0,1)
    if (pab.is_zero()) return 0;
    Polynomial q = reverse_to_degree(pab, pab.degree()).shift_scale(Rat(1), Rat(1));
    return sign_variations(q);
}

bool has_root_open_rec(const Polynomial& p, const Rat& lo, const Rat& hi, int depth) {
    if (sign_at(p, lo) * sign_at(p, hi) < 0) return true;
    const int v = descartes_count(p, lo, hi);
    if (v == 0) return false;
    if (v == 1) return true;
    Rat mid = (lo + hi) / 2;
    if (sign_at(p, mid) == 0) return true;
    // p is square-free here, so the recursion separates roots and terminates;
    // the depth guard is a hard backstop only.
    if (depth > 256) return true;
    return has_root_open_rec(p, lo, mid, depth + 1) || has_root_open_rec(p, mid, hi, depth + 1);
}

} // namespace

bool has_root_in(const Polynomial& p, const Rat& lo, const Rat& hi) {
    if (p.is_zero()) return true;
    if (lo > hi) fail(errc::invalid_input, "has_root_in: empty interval");
    if (sign_at(p, lo) == 0 || sign_at(p, hi) == 0) return true;
    if (lo == hi) return false;
    Polynomial sf = p.squarefree_part();
    if (sf.degree() <= 0) return false;
    return has_root_open_rec(sf, lo, hi, 0);
}

Surd::Surd(Rat a, Rat b, Rat d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (sgn(d_) < 0) fail(errc::invalid_input, "Surd with negative radicand");
    if (sgn(b_) == 0 || sgn(d_) == 0) {
        b_ = 0;
        d_ = 0;
        return;
    }
    if (auto s = exact_sqrt(d_)) { // fold exact square roots into the rational part
        a_ += b_ * *s;
        b_ = 0;
        d_ = 0;
    }
}

int Surd::sign() const {
    if (sgn(b_) == 0) return sgn(a_);
    const int sb = sgn(b_);
    const int sa = sgn(a_);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // compare |a| against |b| sqrt(d): a^2 vs b^2 d
    const int c = sgn(Rat(a_ * a_ - b_ * b_ * d_));
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

namespace {

// sign of c0 + c1*sqrt(d1) + c2*sqrt(d2), all rational, d1,d2 > 0 non-square
// whenever the matching coefficient is non-zero
int sign_two_radicals(const Rat& c0, const Rat& c1, const Rat& d1, const Rat& c2, const Rat& d2) {
    if (sgn(c1) == 0) return Surd(c0, c2, d2).sign();
    if (sgn(c2) == 0) return Surd(c0, c1, d1).sign();
    const int sL = Surd(c0, c1, d1).sign();
    const int sR = sgn(c2);
    if (sL == 0) return sR;
    if (sL == sR) return sL;
    // |c0 + c1 sqrt(d1)| vs |c2| sqrt(d2): square the left side once
    const Rat t0 = c0 * c0 + c1 * c1 * d1 - c2 * c2 * d2;
    const Rat t1 = 2 * c0 * c1;
    const int ts = Surd(t0, t1, d1).sign();
    if (ts == 0) return 0;
    return ts > 0 ? sL : sR;
}

} // namespace

int Surd::cmp(const Surd& o) const {
    if (o.is_rational() && is_rational()) return sgn(a_ - o.a_);
    if (d_ == o.d_) return Surd(a_ - o.a_, b_ - o.b_, d_).sign();
    return sign_two_radicals(a_ - o.a_, b_, d_, -o.b_, o.d_);
}

double Surd::approx() const {
    return to_double(a_) + to_double(b_) * std::sqrt(to_double(d_));
}

void Surd::bracket(Rat& lo, Rat& hi, const Rat& width) const {
    if (is_rational()) {
        lo = hi = a_;
        return;
    }
    // rational bracket [slo, shi] around sqrt(d), refined by exact bisection
    const double approx_sqrt = std::sqrt(to_double(d_));
    Rat slo(std::isfinite(approx_sqrt) ? std::max(approx_sqrt - 1.0, 0.0) : 0.0);
    Rat shi(std::isfinite(approx_sqrt) ? approx_sqrt + 1.0 : 1.0);
    if (slo * slo > d_) slo = 0;
    while (shi * shi < d_) shi *= 2;
    const Rat target = width / (2 * rat_abs(b_));
    while (shi - slo > target) {
        Rat mid = (slo + shi) / 2;
        if (mid * mid <= d_) slo = mid;
        else shi = mid;
    }
    if (sgn(b_) > 0) {
        lo = a_ + b_ * slo;
        hi = a_ + b_ * shi;
    } else {
        lo = a_ + b_ * shi;
        hi = a_ + b_ * slo;
    }
}

QuadraticRoots real_roots_quadratic(const Rat& a, const Rat& b, const Rat& c) {
    QuadraticRoots out;
    if (sgn(a) == 0) {
        if (sgn(b) == 0) {
            out.all_zero = sgn(c) == 0;
            return out;
        }
        out.count = 1;
        out.root[0] = Surd(-c / b);
        return out;
    }
    const Rat disc = b * b - 4 * a * c;
    if (sgn(disc) < 0) return out;
    if (sgn(disc) == 0) {
        out.count = 1;
        out.root[0] = Surd(-b / (2 * a));
        return out;
    }
    Surd r1(-b / (2 * a), -1 / (2 * a), disc);
    Surd r2(-b / (2 * a), 1 / (2 * a), disc);
    if (r2 < r1) std::swap(r1, r2);
    out.count = 2;
    out.root[0] = r1;
    out.root[1] = r2;
    return out;
}

Rat rational_between(const Surd& lo, const Surd& hi) {
    if (!(lo < hi)) fail(errc::invalid_input, "rational_between: lo >= hi");
    if (lo.is_rational() && hi.is_rational())
        return (lo.rational_value() + hi.rational_value()) / 2;
    Rat width(1);
    const double gap = hi.approx() - lo.approx();
    if (gap > 0 && std::isfinite(gap)) width = Rat(gap) / 2;
    for (;;) {
        Rat l1, h1, l2, h2;
        lo.bracket(l1, h1, width);
        hi.bracket(l2, h2, width);
        if (h1 < l2) return (h1 + l2) / 2;
        width /= 16;
    }
}

} // namespace envlie

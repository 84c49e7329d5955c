#include "envlie/char_curve.hpp"

#include <cmath>

#include "envlie/roots.hpp"

namespace envlie {

ConeDerivativeSurface::ConeDerivativeSurface(std::array<Rat, 5> k_in, Rat r_in)
    : k(std::move(k_in)), r(std::move(r_in)) {
    if (sgn(r) <= 0) fail(errc::invalid_input, "cone derivative surface: r must be positive");
    bool all_zero = true;
    for (const Rat& v : k) all_zero = all_zero && sgn(v) == 0;
    if (all_zero)
        fail(errc::stationary_instant, "cone derivative surface: k = 0 is a stationary instant");
}

Polynomial ConeDerivativeSurface::numerator_quadratic() const {
    return Polynomial{-k[0] * r + k[2], -2 * k[1] * r, k[0] * r + k[2]};
}

Polynomial ConeDerivativeSurface::pole_quadratic() const {
    return Polynomial{-k[3], -2 * k[4], k[3]};
}

namespace {

Rat content_of(const std::vector<const Polynomial*>& ps) {
    mpz_class den_lcm = 1;
    for (const Polynomial* p : ps)
        for (const Rat& c : p->coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    for (const Polynomial* p : ps)
        for (const Rat& c : p->coeffs()) {
            mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
        }
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    return content;
}

} // namespace

HomogRationalCurve::HomogRationalCurve(Polynomial W, Polynomial X, Polynomial Y, Polynomial Z)
    : w_(std::move(W)), x_(std::move(X)), y_(std::move(Y)), z_(std::move(Z)) {
    if (w_.is_zero() && x_.is_zero() && y_.is_zero() && z_.is_zero())
        fail(errc::invalid_input, "homogeneous curve: all four polynomials are zero");
    Polynomial g = Polynomial::gcd(Polynomial::gcd(w_, x_), Polynomial::gcd(y_, z_));
    if (g.degree() > 0) {
        Polynomial q, r;
        Polynomial::divmod(w_, g, q, r);
        w_ = q;
        Polynomial::divmod(x_, g, q, r);
        x_ = q;
        Polynomial::divmod(y_, g, q, r);
        y_ = q;
        Polynomial::divmod(z_, g, q, r);
        z_ = q;
    }
    Rat c = content_of({&w_, &x_, &y_, &z_});
    // canonical sign: first non-zero coefficient of (W,X,Y,Z) positive
    for (const Polynomial* p : {&w_, &x_, &y_, &z_}) {
        bool found = false;
        for (const Rat& v : p->coeffs())
            if (sgn(v) != 0) {
                if (sgn(v) < 0) c = -c;
                found = true;
                break;
            }
        if (found) break;
    }
    w_ = w_ / c;
    x_ = x_ / c;
    y_ = y_ / c;
    z_ = z_ / c;
}

int HomogRationalCurve::homog_degree() const {
    return std::max(std::max(w_.degree(), x_.degree()), std::max(y_.degree(), z_.degree()));
}

Vec3<Rat> HomogRationalCurve::eval_affine(const Rat& u) const {
    Rat w = w_.eval(u);
    if (sgn(w) == 0)
        fail(errc::pole, "homogeneous curve: W vanishes at u = " + to_string(u));
    return {x_.eval(u) / w, y_.eval(u) / w, z_.eval(u) / w};
}

Vec3<double> HomogRationalCurve::eval_affine(double u) const {
    const double w = w_.eval(u);
    return {x_.eval(u) / w, y_.eval(u) / w, z_.eval(u) / w};
}

Vec3<double> HomogRationalCurve::eval_angle(double theta) const {
    const double s = std::sin(theta), c = std::cos(theta);
    const int d = homog_degree();
    const double w = w_.eval_homog(s, c, d);
    return {x_.eval_homog(s, c, d) / w, y_.eval_homog(s, c, d) / w, z_.eval_homog(s, c, d) / w};
}

ConeCharKind classify_cone_char(const ConeDerivativeSurface& d) {
    if (sgn(d.k[3]) == 0 && sgn(d.k[4]) == 0) return ConeCharKind::plane_degenerate;
    if (sgn(d.k[0]) == 0 && sgn(d.k[1]) == 0 && sgn(d.k[2]) == 0)
        return ConeCharKind::ruling_degenerate;
    return ConeCharKind::rational;
}

HomogRationalCurve cone_char_param(const ConeDerivativeSurface& d) {
    switch (classify_cone_char(d)) {
        case ConeCharKind::plane_degenerate:
            fail(errc::degenerate_plane,
                 "cone characteristic: derivative surface is a plane through the apex");
        case ConeCharKind::ruling_degenerate:
            fail(errc::degenerate_ruling,
                 "cone characteristic: N vanishes identically, curve degenerates to rulings");
        case ConeCharKind::rational:
            break;
    }
    const Polynomial N = d.numerator_quadratic();
    const Polynomial D = d.pole_quadratic();
    const Polynomial up1{Rat(1), Rat(0), Rat(1)};  // u^2 + 1
    const Polynomial um1{Rat(-1), Rat(0), Rat(1)}; // u^2 - 1
    const Polynomial u2{Rat(0), Rat(2)};           // 2u
    return HomogRationalCurve(up1 * D * d.r, -(um1 * N) * d.r, u2 * N * d.r, -(up1 * N));
}

namespace {

Vec3<double> ruling_direction(double r, double c, double s) { return {r * c, r * s, 1.0}; }

} // namespace

ApexRulings cone_rulings(const ConeDerivativeSurface& d) {
    ApexRulings out;
    const double r = to_double(d.r);
    switch (classify_cone_char(d)) {
        case ConeCharKind::rational:
            fail(errc::invalid_input, "cone_rulings: derivative surface is not degenerate");
        case ConeCharKind::ruling_degenerate: {
            // h = z (k4 x + k5 y): rulings where k4 cos + k5 sin = 0
            const double k4 = to_double(d.k[3]), k5 = to_double(d.k[4]);
            const double n = std::hypot(k4, k5);
            const double c = -k5 / n, s = k4 / n;
            out.directions.push_back(ruling_direction(r, c, s));
            out.directions.push_back(ruling_direction(r, -c, -s));
            return out;
        }
        case ConeCharKind::plane_degenerate:
            break;
    }
    // h = k1 x + k2 y + k3 z: rulings where k1 r cos + k2 r sin + k3 = 0
    const Rat A = d.k[0] * d.r, B = d.k[1] * d.r;
    const Rat& C = d.k[2];
    const Rat n2 = A * A + B * B;
    if (sgn(n2) == 0) { // plane z = 0 meets the cone at the apex alone
        out.apex_only = true;
        return out;
    }
    const Rat off2 = n2 - C * C; // (1 - C^2/n2) * n2
    if (sgn(off2) < 0) {
        out.apex_only = true;
        return out;
    }
    const double a = to_double(A), b = to_double(B), c0 = to_double(C);
    const double inv_n2 = 1.0 / to_double(n2);
    const double fx = -c0 * a * inv_n2, fy = -c0 * b * inv_n2; // foot of the line
    if (sgn(off2) == 0) {
        out.directions.push_back(ruling_direction(r, fx, fy));
        return out;
    }
    const double h = std::sqrt(to_double(off2) * inv_n2 * inv_n2); // offset along the line
    out.directions.push_back(ruling_direction(r, fx - b * h, fy + a * h));
    out.directions.push_back(ruling_direction(r, fx + b * h, fy - a * h));
    return out;
}

namespace {

/// Rational point on {x^2+y^2+z^2 = 1, n.p + e = 0} found by intersecting with
/// the coordinate planes; nullopt when all three probes give irrational roots.
std::optional<Vec3<Rat>> rational_point_on_circle(const Vec3<Rat>& n, const Rat& e) {
    for (int drop = 0; drop < 3; ++drop) {
        const int j = (drop + 1) % 3, k = (drop + 2) % 3;
        const Rat nj = drop == 0 ? n.y : (drop == 1 ? n.z : n.x);
        const Rat nk = drop == 0 ? n.z : (drop == 1 ? n.x : n.y);
        auto build = [&](const Rat& pj, const Rat& pk) {
            Rat c[3] = {Rat(0), Rat(0), Rat(0)};
            c[j] = pj;
            c[k] = pk;
            return Vec3<Rat>{c[0], c[1], c[2]};
        };
        if (sgn(nk) != 0) {
            // p_k = (-e - nj p_j)/nk on p_j^2 + p_k^2 = 1
            const Rat A = nk * nk + nj * nj;
            const Rat B = 2 * nj * e;
            const Rat C = e * e - nk * nk;
            const Rat disc = B * B - 4 * A * C;
            if (sgn(disc) < 0) continue;
            if (auto sq = exact_sqrt(disc)) {
                const Rat pj = (-B + *sq) / (2 * A);
                return build(pj, (-e - nj * pj) / nk);
            }
        } else if (sgn(nj) != 0) {
            const Rat pj = -e / nj;
            const Rat pk2 = 1 - pj * pj;
            if (sgn(pk2) < 0) continue;
            if (auto sq = exact_sqrt(pk2)) return build(pj, *sq);
        } else if (sgn(e) == 0) {
            return build(Rat(1), Rat(0));
        }
    }
    return std::nullopt;
}

} // namespace

SphereSection sphere_char_circle(const Quadric& h) {
    for (size_t i = 0; i < 6; ++i)
        if (sgn(h[i]) != 0)
            fail(errc::invalid_input,
                 "sphere_char_circle: h has a quadratic part; reduce modulo the sphere first");
    if (h.is_zero())
        fail(errc::stationary_instant, "sphere_char_circle: h vanishes identically");

    SphereSection out;
    const Vec3<Rat> n{h[6], h[7], h[8]};
    const Rat& e = h[9];
    const Rat s2 = dot(n, n);
    if (sgn(s2) == 0) return out; // h is a non-zero constant: empty intersection

    const Rat rho2 = 1 - e * e / s2;
    if (sgn(rho2) < 0) return out;
    const Vec3<Rat> p0 = n * Rat(-e / s2);
    if (sgn(rho2) == 0) {
        out.kind = SphereSection::Kind::point;
        out.point = p0;
        return out;
    }
    out.kind = SphereSection::Kind::circle;
    out.center = p0;
    out.radius_sq = rho2;

    const std::optional<Vec3<Rat>> q = rational_point_on_circle(n, e);
    if (!q) return out;

    // Chord pencil through q inside the plane: p = q + alpha v1 + beta v2 with
    // v2 = n x v1 orthogonal to v1, beta = u alpha.
    Vec3<Rat> axis{Rat(0), Rat(0), Rat(0)};
    if (sgn(n.x) != 0 || sgn(n.y) != 0) axis.z = 1;
    else axis.x = 1;
    const Vec3<Rat> v1 = cross(n, axis);
    const Vec3<Rat> v2 = cross(n, v1);
    const Rat a = dot(v1, v1);
    const Rat c = dot(v2, v2);
    const Rat dq = 2 * dot(*q, v1);
    const Rat eq = 2 * dot(*q, v2);
    // alpha(u) = -(dq + eq u)/(a + c u^2)
    const Polynomial Wp{a, Rat(0), c};
    const Polynomial chord{dq, eq};
    auto coord = [&](const Rat& qc, const Rat& v1c, const Rat& v2c) {
        return Wp * qc - chord * Polynomial{v1c, v2c};
    };
    out.curve = HomogRationalCurve(Wp, coord(q->x, v1.x, v2.x), coord(q->y, v1.y, v2.y),
                                   coord(q->z, v1.z, v2.z));
    return out;
}

Quadric derivative_surface(const Quadric& qbar, const RationalMotion& m, const Rat& t0) {
    Quadric h = dphi1(qbar, m.body_velocity(t0));
    if (h.is_zero())
        fail(errc::stationary_instant,
             "derivative surface vanishes identically at t = " + to_string(t0));
    return h;
}

Quadric derivative_surface_scaled(const Quadric& qbar, const RationalMotion& m,
                                  const RationalFunction& lambda, const Rat& t0) {
    if (!m.contains(t0)) fail(errc::out_of_domain, "derivative_surface_scaled: t0 outside domain");
    const std::array<RationalFunction, 10> family = pullback_family(qbar, m);
    std::array<Rat, 10> world;
    for (size_t i = 0; i < 10; ++i) world[i] = (lambda * family[i]).derivative().eval(t0);
    const Quadric h_world{std::move(world)};
    Quadric h = pullback(h_world, m.eval(t0).inverse());
    if (h.is_zero())
        fail(errc::stationary_instant,
             "scaled derivative surface vanishes identically at t = " + to_string(t0));
    return h;
}

HomogRationalCurve map_curve(const HomogRationalCurve& c, const GroupElement& g) {
    const Mat4<Rat>& m = g.matrix();
    auto row = [&](int i) {
        return c.X() * m(i, 0) + c.Y() * m(i, 1) + c.Z() * m(i, 2) + c.W() * m(i, 3);
    };
    return HomogRationalCurve(c.W(), row(0), row(1), row(2));
}

SampledCurve map_curve(const SampledCurve& c, const GroupElement& g) {
    Mat4<double> m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = to_double(g.matrix()(i, j));
    SampledCurve out = c;
    for (Vec3<double>& p : out.points) p = apply_affine(m, p);
    out.seed = apply_affine(m, out.seed);
    return out;
}

ConeCharFamily cone_char_family(const Rat& r, const RationalMotion& m,
                                const RationalFunction& lambda) {
    const Quadric qbar = cone(r);
    const BasicQuadric<RationalFunction> h = dphi1(qbar, m.body_velocity_fn());
    const RationalFunction dlambda = lambda.derivative();
    // scaled elementary-frame family lambda' qbar + lambda h, reduced modulo qbar
    std::array<RationalFunction, 10> hs;
    for (size_t i = 0; i < 10; ++i) hs[i] = dlambda * RationalFunction(qbar[i]) + lambda * h[i];
    const RationalFunction mu = hs[0]; // x^2 coefficient of qbar is 1
    for (size_t i = 0; i < 10; ++i) hs[i] -= mu * RationalFunction(qbar[i]);
    for (size_t i : {size_t{0}, size_t{1}, size_t{2}, size_t{3}, size_t{9}})
        if (!hs[i].is_zero())
            fail(errc::invalid_input,
                 "cone characteristic family: derivative surfaces leave span{x,y,z,xz,yz}; "
                 "the motion is not a rigid cone motion");
    ConeCharFamily fam{{hs[6], hs[7], hs[8], hs[4], hs[5]}, r};
    return fam;
}

ConeDerivativeSurface ConeCharFamily::at(const Rat& t0) const {
    std::array<Rat, 5> kt;
    for (size_t i = 0; i < 5; ++i) kt[i] = k[i].eval(t0);
    return ConeDerivativeSurface(std::move(kt), r); // throws stationary_instant when k = 0
}

namespace {

Rat binom(int n, int k) {
    Rat b(1);
    for (int i = 0; i < k; ++i) b = b * Rat(n - i) / Rat(i + 1);
    return b;
}

std::vector<Rat> monomial_to_bernstein(const Polynomial& p, int d) {
    std::vector<Rat> b(static_cast<size_t>(d) + 1, Rat(0));
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= j; ++i)
            b[static_cast<size_t>(j)] += binom(j, i) / binom(d, i) * p.coeff(i);
    return b;
}

} // namespace

std::array<Rat, 4> RationalBezier::de_casteljau(const Rat& v) const {
    std::vector<std::array<Rat, 4>> pts = control;
    const Rat w = 1 - v;
    for (size_t level = pts.size(); level > 1; --level)
        for (size_t i = 0; i + 1 < level; ++i)
            for (int c = 0; c < 4; ++c) pts[i][c] = w * pts[i][c] + v * pts[i + 1][c];
    return pts[0];
}

Vec3<Rat> RationalBezier::eval_affine(const Rat& v) const {
    const std::array<Rat, 4> h = de_casteljau(v);
    if (sgn(h[3]) == 0) fail(errc::pole, "rational Bezier: zero weight at evaluation point");
    return {h[0] / h[3], h[1] / h[3], h[2] / h[3]};
}

RationalBezier curve_to_bezier(const HomogRationalCurve& c, const Rat& u0, const Rat& u1) {
    if (!(u0 < u1)) fail(errc::invalid_input, "curve_to_bezier: need u0 < u1");
    if (has_root_in(c.W(), u0, u1))
        fail(errc::pole, "curve_to_bezier: W has a root inside the parameter interval");
    const int d = c.homog_degree();
    const Rat span = u1 - u0;
    const std::vector<Rat> bw = monomial_to_bernstein(c.W().shift_scale(u0, span), d);
    const std::vector<Rat> bx = monomial_to_bernstein(c.X().shift_scale(u0, span), d);
    const std::vector<Rat> by = monomial_to_bernstein(c.Y().shift_scale(u0, span), d);
    const std::vector<Rat> bz = monomial_to_bernstein(c.Z().shift_scale(u0, span), d);
    RationalBezier out;
    out.degree = d;
    out.control.resize(static_cast<size_t>(d) + 1);
    for (int j = 0; j <= d; ++j)
        out.control[static_cast<size_t>(j)] = {bx[static_cast<size_t>(j)], by[static_cast<size_t>(j)],
                                               bz[static_cast<size_t>(j)], bw[static_cast<size_t>(j)]};
    return out;
}

} // namespace envlie

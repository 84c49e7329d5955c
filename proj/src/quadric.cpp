#include "envlie/quadric.hpp"

namespace envlie {

QuadricD to_double(const Quadric& q) {
    std::array<double, 10> c;
    for (size_t i = 0; i < 10; ++i) c[i] = to_double(q[i]);
    return QuadricD(c);
}

BasicQuadric<RationalFunction> to_rational_fn(const Quadric& q) {
    std::array<RationalFunction, 10> c;
    for (size_t i = 0; i < 10; ++i) c[i] = RationalFunction(q[i]);
    return BasicQuadric<RationalFunction>(std::move(c));
}

Quadric cone(const Rat& r) {
    if (sgn(r) <= 0) fail(errc::invalid_input, "cone: r must be positive");
    return Quadric({Rat(1), Rat(1), Rat(-r * r), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
}

Quadric unit_sphere() {
    return Quadric({Rat(1), Rat(1), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1)});
}

Quadric paraboloid(const Rat& a, const Rat& b) {
    if (sgn(a) == 0 || sgn(b) == 0) fail(errc::invalid_input, "paraboloid: a, b must be non-zero");
    return Quadric({a, b, Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0)});
}

Quadric pullback(const Quadric& q, const GroupElement& g) {
    const Mat4<Rat> ginv = g.inverse().matrix();
    return Quadric::from_matrix(ginv.transpose() * q.matrix() * ginv);
}

std::array<RationalFunction, 10> pullback_family(const Quadric& qbar, const RationalMotion& m) {
    const Mat4<RationalFunction>& ginv = m.inverse_fn();
    const Mat4<RationalFunction> mp =
        ginv.transpose() * to_rational_fn(qbar).matrix() * ginv;
    return BasicQuadric<RationalFunction>::from_matrix(mp).coeffs();
}

} // namespace envlie

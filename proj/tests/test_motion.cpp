#include <doctest.h>

#include "envlie/motion.hpp"
#include "golden_running_example.hpp"
#include "test_util.hpp"

using namespace envlie;

namespace {
const RationalFunction t = RationalFunction::variable();
}

TEST_CASE("motion evaluation") {
    const RationalMotion id =
        RationalMotion::constant(GroupElement::identity(), Rat(0), Rat(1));
    CHECK(id.eval(rat(1, 3)) == GroupElement::identity());

    const RationalMotion tr = RationalMotion::translation(t, RationalFunction(Rat(2)) * t,
                                                          RationalFunction(Rat(3)) * t, Rat(0),
                                                          Rat(2));
    CHECK(tr.eval(Rat(1)) == GroupElement::translation(Rat(1), Rat(2), Rat(3)));
    CHECK_THROWS_AS(tr.eval(Rat(5)), Error);
}

TEST_CASE("running example lift evaluates to the printed frame at t = 0") {
    const RationalMotion g = testdata::running_example_motion();
    const GroupElement g0 = g.eval(Rat(0));
    const Rat q0(517);
    CHECK(g0.matrix()(0, 0) == Rat(123) / q0);
    CHECK(g0.matrix()(0, 1) == Rat(192) / q0);
    CHECK(g0.matrix()(0, 2) == Rat(-464) / q0);
    CHECK(g0.matrix()(1, 0) == Rat(256) / q0);
    CHECK(g0.matrix()(1, 1) == Rat(387) / q0);
    CHECK(g0.matrix()(1, 2) == Rat(228) / q0);
    CHECK(g0.matrix()(2, 0) == Rat(432) / q0);
    CHECK(g0.matrix()(2, 1) == Rat(-284) / q0);
    CHECK(g0.matrix()(2, 2) == Rat(-3) / q0);
    CHECK(g0.act_point({Rat(0), Rat(0), Rat(0)}) ==
          Vec3<Rat>{rat(3, 2), rat(1, 2), rat(3, 2)});
}

TEST_CASE("body velocity basics") {
    const RationalMotion id =
        RationalMotion::constant(GroupElement::identity(), Rat(0), Rat(1));
    CHECK(id.body_velocity(rat(1, 2)).is_zero());

    const RationalMotion tr = RationalMotion::translation(t, RationalFunction(Rat(2)) * t,
                                                          RationalFunction(Rat(3)) * t, Rat(0),
                                                          Rat(1));
    const auto& basis = se3_basis();
    const AlgebraElement expected =
        basis[3] + basis[4] * Rat(2) + basis[5] * Rat(3);
    CHECK(tr.body_velocity(rat(1, 4)) == expected);
}

TEST_CASE("running example body velocity at 1/2 equals the frozen value") {
    const RationalMotion g = testdata::running_example_motion();
    const AlgebraElement vel = g.body_velocity(rat(1, 2));
    CHECK(vel.matrix() == testdata::body_velocity_at_half());

    // independent route: differentiate each entry with a locally implemented
    // quotient rule on the raw coefficient arrays, then multiply by g(1/2)^-1
    const Mat4<RationalFunction>& e = g.entries();
    Mat4<Rat> dg;
    auto poly_eval = [](const std::vector<Rat>& c, const Rat& x) {
        Rat acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    auto poly_deriv_eval = [&](const std::vector<Rat>& c, const Rat& x) {
        std::vector<Rat> d;
        for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Rat(static_cast<long>(i)));
        return poly_eval(d, x);
    };
    const Rat t0 = rat(1, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const std::vector<Rat>& n = e(i, j).num().coeffs();
            const std::vector<Rat>& d = e(i, j).den().coeffs();
            const Rat nv = poly_eval(n, t0), dv = poly_eval(d, t0);
            const Rat ndv = poly_deriv_eval(n, t0), ddv = poly_deriv_eval(d, t0);
            dg(i, j) = (ndv * dv - nv * ddv) / (dv * dv);
        }
    const Mat4<Rat> indep = g.eval(t0).inverse().matrix() * dg;
    CHECK(indep == testdata::body_velocity_at_half());
}

TEST_CASE("body velocity lands in se(3) across the domain") {
    const RationalMotion g = testdata::running_example_motion();
    testutil::RatGen gen(5);
    for (int i = 0; i < 20; ++i) {
        const Rat t0 = rat(gen.next_int(0, 1000), 1000);
        const AlgebraElement vel = g.body_velocity(t0);
        CHECK(vel.has_skew_block());
        for (int j = 0; j < 4; ++j) CHECK(vel.matrix()(3, j) == Rat(0));
    }
    const RationalMotion rnd = testutil::random_se3_motion(gen, Rat(0), Rat(1));
    for (int i = 0; i < 20; ++i) {
        const Rat t0 = rat(gen.next_int(0, 1000), 1000);
        CHECK(rnd.body_velocity(t0).has_skew_block());
    }
}

TEST_CASE("body velocity is left-invariant") {
    testutil::RatGen gen(17);
    const RationalMotion m = testdata::running_example_motion();
    for (int i = 0; i < 5; ++i) {
        const GroupElement h = testutil::random_se3(gen);
        const RationalMotion hm = compose(h, m);
        const Rat t0 = rat(gen.next_int(0, 100), 100);
        CHECK(hm.body_velocity(t0) == m.body_velocity(t0));
    }
}

TEST_CASE("construction rejects bad lifts") {
    // pole inside the domain
    Mat4<RationalFunction> e = Mat4<RationalFunction>::identity();
    e(0, 3) = RationalFunction(Polynomial{Rat(1)}, Polynomial{rat(-1, 2), Rat(1)});
    CHECK_THROWS_AS(RationalMotion(e, Rat(0), Rat(1), GroupTag::SE3), Error);
    CHECK_NOTHROW(RationalMotion(e, Rat(1), Rat(2), GroupTag::SE3));

    // orthogonality violated as an identity
    Mat4<RationalFunction> s = Mat4<RationalFunction>::identity();
    s(0, 0) = RationalFunction(Rat(2));
    CHECK_THROWS_AS(RationalMotion(s, Rat(0), Rat(1), GroupTag::SE3), Error);
    CHECK_NOTHROW(RationalMotion(s, Rat(0), Rat(1), GroupTag::Aff3));

    // Aff3 with a singular instant inside the domain
    Mat4<RationalFunction> a = Mat4<RationalFunction>::identity();
    a(0, 0) = t; // det = t vanishes at 0
    CHECK_THROWS_AS(RationalMotion(a, Rat(-1), Rat(1), GroupTag::Aff3), Error);
    CHECK_NOTHROW(RationalMotion(a, rat(1, 2), Rat(1), GroupTag::Aff3));
}

TEST_CASE("evaluated inverse matches the symbolic inverse") {
    const RationalMotion g = testdata::running_example_motion();
    const Rat t0 = rat(3, 8);
    Mat4<Rat> inv_sym;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv_sym(i, j) = g.inverse_fn()(i, j).eval(t0);
    CHECK(inv_sym == g.eval(t0).inverse().matrix());
}

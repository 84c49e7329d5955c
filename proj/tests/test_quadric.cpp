#include <doctest.h>

#include "envlie/quadric.hpp"
#include "golden_running_example.hpp"
#include "test_util.hpp"

using namespace envlie;

TEST_CASE("elementary constructors") {
    const Quadric c = cone(rat(1, 5));
    CHECK(c.coeffs() == std::array<Rat, 10>{Rat(1), Rat(1), rat(-1, 25), Rat(0), Rat(0), Rat(0),
                                            Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK(unit_sphere().coeffs() == std::array<Rat, 10>{Rat(1), Rat(1), Rat(1), Rat(0), Rat(0),
                                                        Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1)});
    CHECK(paraboloid(Rat(1), Rat(1)).coeffs() ==
          std::array<Rat, 10>{Rat(1), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0),
                              Rat(-1), Rat(0)});
    CHECK_THROWS_AS(cone(Rat(0)), Error);
    CHECK_THROWS_AS(paraboloid(Rat(0), Rat(1)), Error);
}

TEST_CASE("evaluation") {
    CHECK(unit_sphere().eval({Rat(0), Rat(0), Rat(0)}) == Rat(-1));
    const Rat r = rat(2, 3);
    CHECK(cone(r).eval({Rat(0), Rat(0), Rat(1)}) == -r * r);
    // cross-term convention: xy coefficient multiplies x*y once
    Quadric q({Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK(q.eval({Rat(2), Rat(3), Rat(0)}) == Rat(6));
    CHECK(q.matrix()(0, 1) == rat(1, 2));
    CHECK(Quadric::from_matrix(q.matrix()) == q);
}

TEST_CASE("pullback basics") {
    const Quadric s = unit_sphere();
    CHECK(pullback(s, GroupElement::identity()) == s);

    const Quadric moved = pullback(s, GroupElement::translation(Rat(1), Rat(2), Rat(3)));
    // (x-1)^2 + (y-2)^2 + (z-3)^2 - 1
    CHECK(moved.coeffs() == std::array<Rat, 10>{Rat(1), Rat(1), Rat(1), Rat(0), Rat(0), Rat(0),
                                                Rat(-2), Rat(-4), Rat(-6), Rat(13)});
}

TEST_CASE("pullback is a right action and preserves zero sets") {
    testutil::RatGen gen(3);
    const Quadric s = unit_sphere();
    const Quadric c = cone(rat(1, 2));
    for (int i = 0; i < 50; ++i) {
        const GroupElement g = testutil::random_se3(gen);
        const GroupElement h = testutil::random_se3(gen);
        // right action in application order: first g, then h, i.e. h*g as matrices
        CHECK(pullback(pullback(s, g), h) == pullback(s, compose(h, g)));
        CHECK(pullback(pullback(c, g), h) == pullback(c, compose(h, g)));

        // rational points on the zero sets via stereographic/ruling lines
        const Rat p = gen.next(5, 6), q = gen.next(5, 6);
        const Rat w = 1 + p * p + q * q;
        const Vec3<Rat> sp{2 * p / w, 2 * q / w, (p * p + q * q - 1) / w};
        REQUIRE(s.eval(sp) == Rat(0));
        CHECK(pullback(s, g).eval(g.act_point(sp)) == Rat(0));

        const Rat z = gen.next_nonzero(4, 4);
        const Rat denom = 1 + p * p;
        const Vec3<Rat> cp{rat(1, 2) * (1 - p * p) / denom * z, rat(1, 2) * 2 * p / denom * z, z};
        REQUIRE(c.eval(cp) == Rat(0));
        CHECK(pullback(c, g).eval(g.act_point(cp)) == Rat(0));
    }
}

TEST_CASE("pullback symmetry is preserved") {
    testutil::RatGen gen(9);
    for (int i = 0; i < 5; ++i) {
        const GroupElement g = testutil::random_se3(gen);
        const Mat4<Rat> m = pullback(cone(rat(1, 3)), g).matrix();
        CHECK(m == m.transpose());
    }
}

TEST_CASE("running example pullback equals the published family at sample instants") {
    const RationalMotion motion = testdata::running_example_motion();
    const auto coeffs = testdata::expanded_family_coeffs();
    const RationalFunction lambda = testdata::family_scale();
    for (const Rat& t0 : {Rat(0), rat(1, 2), rat(3, 7), Rat(1)}) {
        const Quadric pb = pullback(cone(rat(1, 5)), motion.eval(t0));
        const Rat l = lambda.eval(t0);
        for (size_t i = 0; i < 10; ++i) CHECK(pb[i] == l * coeffs[i].eval(t0));
    }
}

TEST_CASE("pullback family matches pointwise pullback symbolically") {
    const RationalMotion motion = testdata::running_example_motion();
    const std::array<RationalFunction, 10> fam = pullback_family(cone(rat(1, 5)), motion);
    const auto coeffs = testdata::expanded_family_coeffs();
    const RationalFunction lambda = testdata::family_scale();
    for (size_t i = 0; i < 10; ++i) CHECK(fam[i] == lambda * RationalFunction(coeffs[i]));
}

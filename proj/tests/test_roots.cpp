#include <doctest.h>

#include <cmath>

#include "envlie/roots.hpp"
#include "test_util.hpp"

using namespace envlie;

TEST_CASE("root existence in an interval") {
    const Polynomial q{Rat(517), Rat(788), Rat(1108)}; // no real roots
    CHECK(!has_root_in(q, Rat(-100), Rat(100)));

    const Polynomial tm = Polynomial{rat(-1, 2), Rat(1)}; // t - 1/2
    CHECK(has_root_in(tm, Rat(0), Rat(1)));
    CHECK(!has_root_in(tm, Rat(1), Rat(2)));
    CHECK(has_root_in(tm, rat(1, 2), rat(1, 2))); // endpoint zero

    // double root without a sign change
    CHECK(has_root_in(tm * tm, Rat(0), Rat(1)));
    // two roots, same endpoint signs
    const Polynomial two = Polynomial{rat(1, 3), Rat(-1)} * Polynomial{rat(2, 3), Rat(-1)};
    CHECK(has_root_in(two, Rat(0), Rat(1)));
    CHECK(!has_root_in(two, rat(7, 10), Rat(1)));

    // degree 6 with known roots
    const Polynomial p6 = two * two * (tm * Polynomial{Rat(5), Rat(1)});
    CHECK(has_root_in(p6, Rat(0), Rat(1)));
    CHECK(has_root_in(p6, Rat(-6), Rat(-4)));
    CHECK(!has_root_in(p6, Rat(2), Rat(100)));
}

TEST_CASE("surd ordering is exact") {
    const Surd r2(Rat(0), Rat(1), Rat(2));       // sqrt 2
    const Surd r3(Rat(0), Rat(1), Rat(3));       // sqrt 3
    const Surd mixed(Rat(1), Rat(-2), Rat(2));   // 1 - 2 sqrt2 < 0
    CHECK(r2 < r3);
    CHECK(mixed.sign() == -1);
    CHECK(Surd(rat(3, 2)) > r2);                 // 1.5 > 1.414...
    CHECK(Surd(rat(7, 5)) < r2);                 // 1.4 < sqrt 2
    CHECK(Surd(Rat(0), Rat(2), Rat(2)) == Surd(Rat(0), Rat(1), Rat(8))); // 2 sqrt2 = sqrt8
    CHECK(Surd(Rat(1), Rat(1), Rat(4)).is_rational()); // folds perfect squares
    CHECK(Surd(Rat(1), Rat(1), Rat(4)).rational_value() == Rat(3));

    testutil::RatGen gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Surd a(gen.next(), gen.next(5, 4), rat(gen.next_int(0, 30)));
        const Surd b(gen.next(), gen.next(5, 4), rat(gen.next_int(0, 30)));
        const double da = a.approx(), db = b.approx();
        if (std::abs(da - db) > 1e-9) CHECK((a.cmp(b) < 0) == (da < db));
    }
}

TEST_CASE("quadratic roots") {
    // u^2 - u - 1: golden-ratio pair
    QuadraticRoots g = real_roots_quadratic(Rat(1), Rat(-1), Rat(-1));
    REQUIRE(g.count == 2);
    CHECK(g.root[0] < g.root[1]);
    CHECK(g.root[1].approx() == doctest::Approx(1.6180339887).epsilon(1e-9));

    CHECK(real_roots_quadratic(Rat(1), Rat(0), Rat(1)).count == 0);
    QuadraticRoots dbl = real_roots_quadratic(Rat(1), Rat(-2), Rat(1));
    REQUIRE(dbl.count == 1);
    CHECK(dbl.root[0].is_rational());
    CHECK(dbl.root[0].rational_value() == Rat(1));
    CHECK(real_roots_quadratic(Rat(0), Rat(2), Rat(-3)).count == 1);
    CHECK(real_roots_quadratic(Rat(0), Rat(0), Rat(0)).all_zero);
}

TEST_CASE("rational_between separates surds") {
    const Surd r2(Rat(0), Rat(1), Rat(2));
    const Surd r2eps(Rat(0), Rat(1), rat(2000001, 1000000)); // barely larger
    const Rat m = rational_between(r2, r2eps);
    CHECK(Surd(m) > r2);
    CHECK(Surd(m) < r2eps);
    CHECK(rational_between(Surd(Rat(0)), Surd(Rat(1))) == rat(1, 2));
}

#include <doctest.h>

#include "envlie/error.hpp"
#include "envlie/rational_fn.hpp"
#include "test_util.hpp"

using namespace envlie;

namespace {
const RationalFunction t = RationalFunction::variable();
}

TEST_CASE("rational helpers") {
    CHECK(rat_from_string("3/4") == rat(3, 4));
    CHECK(rat_from_string("-7") == rat(-7));
    CHECK(rat_from_string("1.25") == rat(5, 4));
    CHECK(rat_from_string("-0.5") == rat(-1, 2));
    CHECK(rat_from_string("1e-3") == rat(1, 1000));
    CHECK(rat_from_string("-2.5e2") == rat(-250));
    CHECK(rat_from_string("1.0000000000000001e-05") == Rat(mpz_class("10000000000000001")) /
                                                          Rat(mpz_class("1000000000000000000000")));
    CHECK(to_string(rat(-3, 7)) == "-3/7");
    CHECK(to_string(rat(4, 2)) == "2");
    CHECK_THROWS_AS(rat_from_string("1/0"), Error);
    CHECK_THROWS_AS(rat_from_string("abc"), Error);
    CHECK_THROWS_AS(rat_from_string("1e"), Error);

    CHECK(exact_sqrt(rat(9, 4)) == rat(3, 2));
    CHECK(!exact_sqrt(rat(2)).has_value());
    CHECK(exact_sqrt(Rat(0)) == Rat(0));
}

TEST_CASE("polynomial canonical form and arithmetic") {
    Polynomial p{Rat(1), Rat(0), Rat(0)};
    CHECK(p.degree() == 0); // trailing zeros trimmed
    CHECK(Polynomial{}.is_zero());
    CHECK((Polynomial{Rat(1), Rat(2)} * Polynomial{Rat(3), Rat(4)}) ==
          Polynomial{Rat(3), Rat(10), Rat(8)});
    CHECK(Polynomial{Rat(0), Rat(0), Rat(3)}.derivative() == Polynomial{Rat(0), Rat(6)});

    Polynomial q, r;
    REQUIRE(Polynomial::divmod(Polynomial{Rat(-1), Rat(0), Rat(1)}, Polynomial{Rat(1), Rat(1)}, q, r));
    CHECK(q == Polynomial{Rat(-1), Rat(1)});
    CHECK(r.is_zero());

    CHECK(Polynomial::gcd(Polynomial{Rat(-1), Rat(0), Rat(1)}, Polynomial{Rat(1), Rat(1)}) ==
          Polynomial{Rat(1), Rat(1)});
    CHECK(Polynomial{Rat(1), Rat(2), Rat(1)}.squarefree_part() == Polynomial{Rat(1), Rat(1)});

    // p(a + b u)
    CHECK(Polynomial{Rat(0), Rat(0), Rat(1)}.shift_scale(Rat(1), Rat(2)) ==
          Polynomial{Rat(1), Rat(4), Rat(4)});
}

TEST_CASE("rational function arithmetic matches hand results") {
    CHECK(t + (RationalFunction(Rat(1)) - t) == RationalFunction(Rat(1)));
    const RationalFunction tp1 = t + RationalFunction(Rat(1));
    CHECK(RationalFunction(Polynomial{Rat(1)}, Polynomial{Rat(1), Rat(1)}) * tp1 ==
          RationalFunction(Rat(1)));
    // 1/t + 1/(t+1) = (2t+1)/(t^2+t)
    const RationalFunction sum = RationalFunction(Polynomial{Rat(1)}, Polynomial{Rat(0), Rat(1)}) +
                                 RationalFunction(Polynomial{Rat(1)}, Polynomial{Rat(1), Rat(1)});
    CHECK(sum == RationalFunction(Polynomial{Rat(1), Rat(2)}, Polynomial{Rat(0), Rat(1), Rat(1)}));
    CHECK(sum.eval(Rat(1)) == rat(3, 2));
}

TEST_CASE("derivatives") {
    CHECK(RationalFunction(Rat(7)).derivative().is_zero());
    CHECK((t * t).derivative() == RationalFunction(Rat(2)) * t);
    // quotient rule on 1/(1108 t^2 + 788 t + 517)
    const Polynomial den{Rat(517), Rat(788), Rat(1108)};
    const RationalFunction f(Polynomial{Rat(1)}, den);
    CHECK(f.derivative() ==
          RationalFunction(Polynomial{Rat(-788), Rat(-2216)}, den * den));
}

TEST_CASE("evaluation and poles") {
    const Polynomial den{Rat(517), Rat(788), Rat(1108)};
    const RationalFunction lambda(Polynomial{Rat(1)}, den * den * Rat(100));
    CHECK(lambda.eval(Rat(0)) == rat(1, 26728900)); // 1/(100 * 517^2)

    const RationalFunction pole(Polynomial{Rat(0), Rat(1)}, Polynomial{Rat(-1), Rat(1)});
    CHECK_THROWS_AS(pole.eval(Rat(1)), Error);
    CHECK_THROWS_AS(RationalFunction(Rat(1)) / RationalFunction(), Error);
    CHECK_THROWS_AS(RationalFunction(Polynomial{Rat(1)}, Polynomial{}), Error);
}

TEST_CASE("product rule holds on random instances") {
    testutil::RatGen gen(42);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rat> ca, cb, da, db;
        for (int i = 0; i < 3; ++i) {
            ca.push_back(gen.next());
            cb.push_back(gen.next());
            da.push_back(gen.next());
            db.push_back(gen.next());
        }
        da.push_back(Rat(1)); // keep denominators non-zero
        db.push_back(Rat(1));
        const RationalFunction a{Polynomial(ca), Polynomial(da)};
        const RationalFunction b{Polynomial(cb), Polynomial(db)};
        CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
    }
}

TEST_CASE("canonical form is unique") {
    // same function, different constructions, bitwise-equal representations
    const RationalFunction a(Polynomial{Rat(2), Rat(2)}, Polynomial{Rat(2)});
    const RationalFunction b(Polynomial{Rat(1), Rat(3), Rat(2)}, Polynomial{Rat(1), Rat(2)});
    CHECK(a.num() == b.num());
    CHECK(a.den() == b.den());
    CHECK(a.den().leading() == Rat(1)); // monic denominator
}

#include <doctest.h>

#include <cmath>

#include "envlie/char_curve.hpp"
#include "golden_running_example.hpp"
#include "test_util.hpp"

using namespace envlie;

namespace {
const RationalFunction tvar = RationalFunction::variable();
}

TEST_CASE("derivative surface basics") {
    const RationalMotion still =
        RationalMotion::constant(GroupElement::identity(), Rat(0), Rat(1));
    CHECK_THROWS_AS(derivative_surface(unit_sphere(), still, rat(1, 2)), Error);

    // moving sphere: plane through the center with the velocity as normal
    const RationalMotion tr = RationalMotion::translation(
        tvar, RationalFunction(Rat(2)) * tvar, RationalFunction(Rat(3)) * tvar, Rat(0), Rat(1));
    const Quadric h = derivative_surface(unit_sphere(), tr, rat(1, 3));
    std::array<Rat, 10> expect{};
    expect[6] = Rat(-2);
    expect[7] = Rat(-4);
    expect[8] = Rat(-6);
    CHECK(h == Quadric(expect));
}

TEST_CASE("running example derivative surface stays in the Theorem-2 span") {
    const RationalMotion m = testdata::running_example_motion();
    const Quadric qbar = cone(rat(1, 5));
    const Quadric h = derivative_surface(qbar, m, rat(1, 2));
    CHECK(h[0] == Rat(0));
    CHECK(h[1] == Rat(0));
    CHECK(h[2] == Rat(0));
    CHECK(h[3] == Rat(0));
    CHECK(h[9] == Rat(0));
    const auto k = testdata::k_at_half();
    CHECK(h[6] == k[0]);
    CHECK(h[7] == k[1]);
    CHECK(h[8] == k[2]);
    CHECK(h[4] == k[3]);
    CHECK(h[5] == k[4]);

    const ConeCharFamily fam = cone_char_family(rat(1, 5), m);
    const ConeDerivativeSurface d = fam.at(rat(1, 2));
    CHECK(d.k == k);
}

TEST_CASE("scaled family route reproduces the direct derivative surface") {
    const RationalMotion m = testdata::running_example_motion();
    const Quadric qbar = cone(rat(1, 5));
    testutil::RatGen gen(51);
    for (int i = 0; i < 6; ++i) {
        const Rat t0 = rat(gen.next_int(0, 100), 100);
        const Quadric direct = derivative_surface(qbar, m, t0);
        const Quadric via_family =
            derivative_surface_scaled(qbar, m, RationalFunction(Rat(1)), t0);
        CHECK(direct == via_family);
    }
}

TEST_CASE("scaling the family shifts the derivative surface along the pencil") {
    // lambda(t) = 1 + t^2: h_lambda - lambda(t0) h = lambda'(t0) qbar exactly
    const RationalMotion m = testdata::running_example_motion();
    const Quadric qbar = cone(rat(1, 5));
    const RationalFunction lambda(Polynomial{Rat(1), Rat(0), Rat(1)});
    testutil::RatGen gen(52);
    for (int i = 0; i < 10; ++i) {
        const Rat t0 = rat(gen.next_int(0, 1000), 1000);
        const Quadric h = derivative_surface(qbar, m, t0);
        const Quadric h_l = derivative_surface_scaled(qbar, m, lambda, t0);
        const Quadric diff = h_l - h * lambda.eval(t0);
        CHECK(diff == qbar * (2 * t0)); // lambda'(t0) = 2 t0
    }
}

TEST_CASE("cone characteristic parameterization") {
    const Rat r = rat(1, 5);
    SUBCASE("worked example k = (0,0,1,1,0)") {
        const ConeDerivativeSurface d({Rat(0), Rat(0), Rat(1), Rat(1), Rat(0)}, r);
        const HomogRationalCurve c = cone_char_param(d);
        // affine form (-1, 2u/(u^2-1), -(u^2+1)/(r(u^2-1)))
        for (const Rat& u : {Rat(2), rat(1, 3), Rat(-4)}) {
            const Vec3<Rat> p = c.eval_affine(u);
            CHECK(p.x == Rat(-1));
            CHECK(p.y == 2 * u / (u * u - 1));
            CHECK(p.z == -(u * u + 1) / (r * (u * u - 1)));
        }
        CHECK_THROWS_AS(c.eval_affine(Rat(1)), Error); // pole of D
    }
    SUBCASE("cleared residual identities on random surfaces") {
        testutil::RatGen gen(77);
        int done = 0;
        while (done < 60) {
            std::array<Rat, 5> k;
            for (auto& v : k) v = gen.next(8, 6);
            if (sgn(k[3]) == 0 && sgn(k[4]) == 0) continue;
            if (sgn(k[0]) == 0 && sgn(k[1]) == 0 && sgn(k[2]) == 0) continue;
            const Rat rr = gen.next_nonzero(6, 5);
            const ConeDerivativeSurface d(k, rat_abs(rr));
            const HomogRationalCurve c = cone_char_param(d);
            const Polynomial cone_res = c.X() * c.X() + c.Y() * c.Y() -
                                        c.Z() * c.Z() * Rat(d.r * d.r);
            CHECK(cone_res.is_zero());
            const Polynomial h_res = c.X() * c.W() * k[0] + c.Y() * c.W() * k[1] +
                                     c.Z() * c.W() * k[2] + c.X() * c.Z() * k[3] +
                                     c.Y() * c.Z() * k[4];
            CHECK(h_res.is_zero());
            ++done;
        }
    }
    SUBCASE("degenerate classes are rejected with their own errors") {
        CHECK_THROWS_AS(cone_char_param(ConeDerivativeSurface(
                            {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}, r)),
                        Error); // h = yz
        CHECK_THROWS_AS(cone_char_param(ConeDerivativeSurface(
                            {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)}, r)),
                        Error); // plane through the apex
        CHECK_THROWS_AS(ConeDerivativeSurface({Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)}, r),
                        Error); // stationary
    }
}

TEST_CASE("cone rulings in the degenerate classes") {
    const Rat r = rat(1, 4);
    SUBCASE("h = yz gives the two rulings in the y = 0 plane") {
        const ApexRulings out =
            cone_rulings(ConeDerivativeSurface({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}, r));
        REQUIRE(out.directions.size() == 2);
        CHECK(!out.apex_only);
        for (const Vec3<double>& dir : out.directions) {
            CHECK(std::abs(dir.y) < 1e-15);
            CHECK(std::abs(std::abs(dir.x) - 0.25) < 1e-15);
            CHECK(dir.z == 1.0);
        }
        CHECK(out.directions[0].x * out.directions[1].x < 0);
    }
    SUBCASE("h = z meets the cone at the apex only") {
        const ApexRulings out =
            cone_rulings(ConeDerivativeSurface({Rat(0), Rat(0), Rat(1), Rat(0), Rat(0)}, r));
        CHECK(out.apex_only);
        CHECK(out.directions.empty());
    }
    SUBCASE("h = x gives the two rulings in the x = 0 plane") {
        const ApexRulings out =
            cone_rulings(ConeDerivativeSurface({Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)}, r));
        REQUIRE(out.directions.size() == 2);
        for (const Vec3<double>& dir : out.directions) {
            CHECK(std::abs(dir.x) < 1e-15);
            CHECK(std::abs(std::abs(dir.y) - 0.25) < 1e-15);
        }
    }
    SUBCASE("random degenerate surfaces: rulings lie on the cone and on h") {
        testutil::RatGen gen(85);
        int planes = 0, rulings = 0;
        while (planes < 25 || rulings < 25) {
            std::array<Rat, 5> k{};
            const bool plane_case = planes < 25;
            if (plane_case) {
                k[0] = gen.next(6, 4);
                k[1] = gen.next(6, 4);
                k[2] = gen.next(6, 4);
                if (sgn(k[0]) == 0 && sgn(k[1]) == 0 && sgn(k[2]) == 0) continue;
            } else {
                k[3] = gen.next(6, 4);
                k[4] = gen.next(6, 4);
                if (sgn(k[3]) == 0 && sgn(k[4]) == 0) continue;
            }
            const Rat rr = rat_abs(gen.next_nonzero(5, 4));
            const ConeDerivativeSurface d(k, rr);
            const ApexRulings out = cone_rulings(d);
            const QuadricD cone_d = to_double(cone(rr));
            const double kd[5] = {to_double(k[0]), to_double(k[1]), to_double(k[2]),
                                  to_double(k[3]), to_double(k[4])};
            for (const Vec3<double>& dir : out.directions) {
                for (double s : {0.5, -2.0}) {
                    const Vec3<double> p = dir * s;
                    CHECK(std::abs(cone_d.eval(p)) < 1e-12);
                    const double h = kd[0] * p.x + kd[1] * p.y + kd[2] * p.z +
                                     kd[3] * p.x * p.z + kd[4] * p.y * p.z;
                    CHECK(std::abs(h) < 1e-12);
                }
            }
            if (out.apex_only) CHECK(out.directions.empty());
            planes += plane_case;
            rulings += !plane_case;
        }
    }
}

TEST_CASE("sphere sections") {
    auto plane = [](const Rat& a, const Rat& b, const Rat& c, const Rat& e) {
        std::array<Rat, 10> q{};
        q[6] = a;
        q[7] = b;
        q[8] = c;
        q[9] = e;
        return Quadric(q);
    };
    SUBCASE("z = 0 is a great circle with an exact parameterization") {
        const SphereSection s = sphere_char_circle(plane(Rat(0), Rat(0), Rat(1), Rat(0)));
        REQUIRE(s.kind == SphereSection::Kind::circle);
        CHECK(s.radius_sq == Rat(1));
        REQUIRE(s.curve.has_value());
        const HomogRationalCurve& c = *s.curve;
        // on the sphere and on the plane as polynomial identities
        CHECK((c.X() * c.X() + c.Y() * c.Y() + c.Z() * c.Z() - c.W() * c.W()).is_zero());
        CHECK(c.Z().is_zero());
        CHECK(c.homog_degree() == 2);
    }
    SUBCASE("z = 1 is the tangency point") {
        const SphereSection s = sphere_char_circle(plane(Rat(0), Rat(0), Rat(1), Rat(-1)));
        CHECK(s.kind == SphereSection::Kind::point);
        CHECK(s.point == Vec3<Rat>{Rat(0), Rat(0), Rat(1)});
    }
    SUBCASE("z = 2 misses the sphere") {
        CHECK(sphere_char_circle(plane(Rat(0), Rat(0), Rat(1), Rat(-2))).kind ==
              SphereSection::Kind::empty);
    }
    SUBCASE("tangent skew plane gives a point") {
        const SphereSection s = sphere_char_circle(plane(Rat(3), Rat(4), Rat(0), Rat(-5)));
        REQUIRE(s.kind == SphereSection::Kind::point);
        CHECK(s.point == Vec3<Rat>{rat(3, 5), rat(4, 5), Rat(0)});
    }
    SUBCASE("skew plane with a rational point") {
        const SphereSection s = sphere_char_circle(plane(Rat(1), Rat(2), Rat(2), Rat(-1)));
        REQUIRE(s.kind == SphereSection::Kind::circle);
        REQUIRE(s.curve.has_value());
        const HomogRationalCurve& c = *s.curve;
        CHECK((c.X() * c.X() + c.Y() * c.Y() + c.Z() * c.Z() - c.W() * c.W()).is_zero());
        CHECK((c.X() + c.Y() * Rat(2) + c.Z() * Rat(2) - c.W()).is_zero());
    }
    SUBCASE("circle without a rational point keeps exact center data") {
        // x = 1/2 section: y^2 + z^2 = 3/4 has no rational points
        const SphereSection s = sphere_char_circle(plane(Rat(1), Rat(0), Rat(0), rat(-1, 2)));
        REQUIRE(s.kind == SphereSection::Kind::circle);
        CHECK(!s.curve.has_value());
        CHECK(s.center == Vec3<Rat>{rat(1, 2), Rat(0), Rat(0)});
        CHECK(s.radius_sq == rat(3, 4));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(sphere_char_circle(unit_sphere()), Error); // quadratic part
        CHECK_THROWS_AS(sphere_char_circle(Quadric{}), Error);     // zero
    }
}

TEST_CASE("map_curve") {
    const ConeDerivativeSurface d({Rat(0), Rat(0), Rat(1), Rat(1), Rat(0)}, rat(1, 5));
    const HomogRationalCurve c = cone_char_param(d);
    CHECK(map_curve(c, GroupElement::identity()) == c);

    const GroupElement lift = GroupElement::translation(Rat(0), Rat(0), Rat(1));
    const HomogRationalCurve moved = map_curve(c, lift);
    const Rat u(3);
    CHECK(moved.eval_affine(u) == c.eval_affine(u) + Vec3<Rat>{Rat(0), Rat(0), Rat(1)});
}

TEST_CASE("mapped characteristic satisfies both defining equations of the family") {
    const RationalMotion m = testdata::running_example_motion();
    const Quadric qbar = cone(rat(1, 5));
    const auto coeffs = testdata::expanded_family_coeffs();
    testutil::RatGen gen(99);
    for (int trial = 0; trial < 10; ++trial) {
        const Rat t0 = rat(gen.next_int(0, 1000), 1000);
        const ConeCharFamily fam = cone_char_family(rat(1, 5), m);
        const HomogRationalCurve world = map_curve(cone_char_param(fam.at(t0)), m.eval(t0));

        // normalized double coefficients of f and df/dt at t0
        std::array<double, 10> f{}, ft{};
        double fmax = 0, ftmax = 0;
        for (size_t i = 0; i < 10; ++i) {
            f[i] = to_double(coeffs[i].eval(t0));
            ft[i] = to_double(coeffs[i].derivative().eval(t0));
            fmax = std::max(fmax, std::abs(f[i]));
            ftmax = std::max(ftmax, std::abs(ft[i]));
        }
        for (size_t i = 0; i < 10; ++i) {
            f[i] /= fmax;
            ft[i] /= ftmax;
        }
        const QuadricD fq{f}, ftq{ft};
        for (int j = 0; j < 50; ++j) {
            const double theta = -1.5 + 3.0 * j / 49.0;
            const Vec3<double> p = world.eval_angle(theta);
            if (!std::isfinite(p.x) || std::abs(p.x) > 1e4) continue; // near a pole
            CHECK(std::abs(fq.eval(p)) <= 1e-9);
            CHECK(std::abs(ftq.eval(p)) <= 1e-9);
        }
    }
}

TEST_CASE("exact on-surface point from the characteristic parameterization") {
    // chi(1/3) at t = 1/2 mapped to the world frame lies on the published
    // family exactly, in rational arithmetic
    const RationalMotion m = testdata::running_example_motion();
    const ConeCharFamily fam = cone_char_family(rat(1, 5), m);
    const HomogRationalCurve world =
        map_curve(cone_char_param(fam.at(rat(1, 2))), m.eval(rat(1, 2)));
    const Vec3<Rat> p = world.eval_affine(rat(1, 3));
    const auto coeffs = testdata::expanded_family_coeffs();
    std::array<Rat, 10> at_half, dt_half;
    for (size_t i = 0; i < 10; ++i) {
        at_half[i] = coeffs[i].eval(rat(1, 2));
        dt_half[i] = coeffs[i].derivative().eval(rat(1, 2));
    }
    CHECK(Quadric(at_half).eval(p) == Rat(0));
    CHECK(Quadric(dt_half).eval(p) == Rat(0));
}

TEST_CASE("bezier conversion") {
    SUBCASE("constant curve collapses to equal control points") {
        const HomogRationalCurve c(Polynomial{Rat(2)}, Polynomial{Rat(2)}, Polynomial{Rat(4)},
                                   Polynomial{Rat(6)});
        const RationalBezier bz = curve_to_bezier(c, Rat(0), Rat(1));
        for (const auto& cp : bz.control) CHECK(cp == bz.control.front());
    }
    SUBCASE("quadratic circle arc gives the classic control net") {
        const HomogRationalCurve circle(Polynomial{Rat(1), Rat(0), Rat(1)},
                                        Polynomial{Rat(1), Rat(0), Rat(-1)},
                                        Polynomial{Rat(0), Rat(2)}, Polynomial{});
        const RationalBezier bz = curve_to_bezier(circle, Rat(0), Rat(1));
        REQUIRE(bz.degree == 2);
        CHECK(bz.control[0] == std::array<Rat, 4>{Rat(1), Rat(0), Rat(0), Rat(1)});
        CHECK(bz.control[1] == std::array<Rat, 4>{Rat(1), Rat(1), Rat(0), Rat(1)});
        CHECK(bz.control[2] == std::array<Rat, 4>{Rat(0), Rat(2), Rat(0), Rat(2)});
        // weights (1,1,2), affine points (1,0),(1,1),(0,1)
        CHECK(bz.eval_affine(rat(1, 2)) ==
              circle.eval_affine(rat(1, 2)));
    }
    SUBCASE("de Casteljau agrees with rational evaluation at interior parameters") {
        const ConeDerivativeSurface d({Rat(1), Rat(-2), rat(1, 3), Rat(1), Rat(2)}, rat(2, 5));
        const HomogRationalCurve c = cone_char_param(d);
        const Rat u0 = Rat(2), u1 = Rat(4); // clear of the poles of D
        const RationalBezier bz = curve_to_bezier(c, u0, u1);
        for (int i = 1; i <= 10; ++i) {
            const Rat v = rat(i, 11);
            const Rat u = u0 + (u1 - u0) * v;
            CHECK(bz.eval_affine(v) == c.eval_affine(u));
        }
    }
    SUBCASE("pole inside the interval is rejected") {
        const ConeDerivativeSurface d({Rat(0), Rat(0), Rat(1), Rat(1), Rat(0)}, rat(1, 5));
        CHECK_THROWS_AS(curve_to_bezier(cone_char_param(d), Rat(0), Rat(2)), Error);
    }
}

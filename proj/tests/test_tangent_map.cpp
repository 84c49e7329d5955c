#include <doctest.h>

#include "envlie/tangent_map.hpp"
#include "test_util.hpp"

using namespace envlie;

namespace {

Quadric mono(size_t index, const Rat& coeff) {
    std::array<Rat, 10> c{};
    c[index] = coeff;
    return Quadric(c);
}

// basis indices in {x^2,y^2,z^2,xy,xz,yz,x,y,z,1}
constexpr size_t X2 = 0, Y2 = 1, Z2 = 2, XY = 3, XZ = 4, YZ = 5, X = 6, Y = 7, Z = 8, ONE = 9;

} // namespace

TEST_CASE("cone table for symbolic r") {
    for (const Rat& r : {rat(1, 5), Rat(1), rat(7, 3)}) {
        const Quadric q = cone(r);
        const auto& b = se3_basis();
        CHECK(dphi1(q, b[0]) == mono(YZ, 2 * (1 + r * r)));
        CHECK(dphi1(q, b[1]) == mono(XZ, 2 * (1 + r * r)));
        CHECK(dphi1(q, b[2]).is_zero());
        CHECK(dphi1(q, b[3]) == mono(X, Rat(-2)));
        CHECK(dphi1(q, b[4]) == mono(Y, Rat(-2)));
        CHECK(dphi1(q, b[5]) == mono(Z, 2 * r * r));
    }
}

TEST_CASE("sphere translation and affine tables") {
    const Quadric s = unit_sphere();
    const auto& b = se3_basis();
    CHECK(dphi1(s, b[3]) == mono(X, Rat(-2)));
    CHECK(dphi1(s, b[4]) == mono(Y, Rat(-2)));
    CHECK(dphi1(s, b[5]) == mono(Z, Rat(-2)));

    const auto& gens = aff3_generators();
    // expansions e1..e3 and shears s1..s6 (affine ellipsoid table)
    CHECK(dphi1(s, gens[3]) == mono(X2, Rat(-2)));
    CHECK(dphi1(s, gens[4]) == mono(Y2, Rat(-2)));
    CHECK(dphi1(s, gens[5]) == mono(Z2, Rat(-2)));
    CHECK(dphi1(s, gens[6]) == mono(XY, Rat(-2)));
    CHECK(dphi1(s, gens[7]) == mono(XZ, Rat(-2)));
    CHECK(dphi1(s, gens[8]) == mono(YZ, Rat(-2)));
    CHECK(dphi1(s, gens[9]) == mono(XY, Rat(-2)));
    CHECK(dphi1(s, gens[10]) == mono(XZ, Rat(-2)));
    CHECK(dphi1(s, gens[11]) == mono(YZ, Rat(-2)));

    // uniform expansion diag(1,1,1,0): the image is -2(x^2+y^2+z^2), i.e. the
    // sum of the three expansion rows (the canal-surface table prints it with
    // the sign flipped, which contradicts its own per-axis table by linearity)
    Mat4<Rat> e;
    e(0, 0) = e(1, 1) = e(2, 2) = Rat(1);
    const Quadric img = dphi1(s, AlgebraElement(e));
    CHECK(img == mono(X2, Rat(-2)) + mono(Y2, Rat(-2)) + mono(Z2, Rat(-2)));
}

TEST_CASE("paraboloid tables") {
    testutil::RatGen gen(13);
    for (int trial = 0; trial < 4; ++trial) {
        const Rat a = gen.next_nonzero(5, 4);
        const Rat b = gen.next_nonzero(5, 4);
        const Quadric p = paraboloid(a, b);
        const auto& rot = se3_basis();
        CHECK(dphi1(p, rot[0]) == mono(Y, Rat(1)) + mono(YZ, 2 * b));
        CHECK(dphi1(p, rot[1]) == mono(X, Rat(1)) + mono(XZ, 2 * a));
        CHECK(dphi1(p, rot[2]) == mono(XY, 2 * (a - b)));
        CHECK(dphi1(p, rot[3]) == mono(X, -2 * a));
        CHECK(dphi1(p, rot[4]) == mono(Y, -2 * b));
        CHECK(dphi1(p, rot[5]) == mono(ONE, Rat(1)));

        const auto& gens = aff3_generators();
        CHECK(dphi1(p, gens[3]) == mono(X2, -2 * a));
        CHECK(dphi1(p, gens[4]) == mono(Y2, -2 * b));
        CHECK(dphi1(p, gens[5]) == mono(Z, Rat(1)));
        CHECK(dphi1(p, gens[6]) == mono(XY, -2 * a));
        CHECK(dphi1(p, gens[7]) == mono(XZ, -2 * a));
        CHECK(dphi1(p, gens[8]) == mono(YZ, -2 * b));
        CHECK(dphi1(p, gens[9]) == mono(XY, -2 * b));
        CHECK(dphi1(p, gens[10]) == mono(X, Rat(1)));
        CHECK(dphi1(p, gens[11]) == mono(Y, Rat(1)));
    }
}

TEST_CASE("closed form agrees with one-parameter subgroup curves") {
    // For every generator, push the elementary surface along the matching
    // subgroup curve c(s) (rotations via the rational Cayley substitution,
    // expansions/shears via e^t -> 1+s) and differentiate the pullback family
    // at s = 0; this must reproduce dphi1(qbar, c'(0)) exactly.
    const RationalFunction s = RationalFunction::variable();
    const Rat lo = rat(-1, 2), hi = rat(1, 2);
    std::vector<RationalMotion> curves;
    for (int axis = 0; axis < 3; ++axis)
        curves.push_back(RationalMotion::cayley_rotation(axis, s, lo, hi));
    curves.push_back(RationalMotion::translation(s, RationalFunction(), RationalFunction(), lo, hi));
    curves.push_back(RationalMotion::translation(RationalFunction(), s, RationalFunction(), lo, hi));
    curves.push_back(RationalMotion::translation(RationalFunction(), RationalFunction(), s, lo, hi));
    {
        // axis expansions diag(1+s,1,1) etc.
        for (int axis = 0; axis < 3; ++axis) {
            Mat4<RationalFunction> e = Mat4<RationalFunction>::identity();
            e(axis, axis) = RationalFunction(Rat(1)) + s;
            curves.emplace_back(std::move(e), lo, hi, GroupTag::Aff3);
        }
        const int shear_pairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}};
        for (const auto& rc : shear_pairs)
            curves.push_back(RationalMotion::shear(rc[0], rc[1], s, lo, hi));
    }

    for (const Quadric& q : {cone(rat(1, 5)), unit_sphere(), paraboloid(rat(3, 2), rat(-2, 3))}) {
        for (const RationalMotion& c : curves) {
            const AlgebraElement gamma = c.body_velocity(Rat(0));
            const std::array<RationalFunction, 10> fam = pullback_family(q, c);
            std::array<Rat, 10> deriv_at_0;
            for (size_t i = 0; i < 10; ++i) deriv_at_0[i] = fam[i].derivative().eval(Rat(0));
            CHECK(dphi1(q, gamma) == Quadric(deriv_at_0));
        }
    }
}

TEST_CASE("dphi1 is linear") {
    testutil::RatGen gen(29);
    const auto& b = se3_basis();
    for (const Quadric& q : {cone(rat(2, 7)), unit_sphere(), paraboloid(Rat(2), Rat(3))}) {
        for (int trial = 0; trial < 10; ++trial) {
            const Rat alpha = gen.next(), beta = gen.next();
            const size_t i = static_cast<size_t>(gen.next_int(0, 5));
            const size_t j = static_cast<size_t>(gen.next_int(0, 5));
            const AlgebraElement combo =
                AlgebraElement(b[i].matrix() * alpha + b[j].matrix() * beta);
            CHECK(dphi1(q, combo) == dphi1(q, b[i]) * alpha + dphi1(q, b[j]) * beta);
        }
    }
}

TEST_CASE("image ranks and spans") {
    const auto& b = se3_basis();
    const auto& gens = aff3_generators();

    const ImageBasis cone_img = image_basis(cone(rat(1, 5)), b);
    CHECK(cone_img.rank == 5);
    const std::vector<Quadric> xyzxzyz = {mono(X, Rat(1)), mono(Y, Rat(1)), mono(Z, Rat(1)),
                                          mono(XZ, Rat(1)), mono(YZ, Rat(1))};
    CHECK(same_span(cone_img.basis, xyzxzyz));

    const ImageBasis sph_transl = image_basis(unit_sphere(), std::span(b).subspan(3, 3));
    CHECK(sph_transl.rank == 3);
    const std::vector<Quadric> xyz = {mono(X, Rat(1)), mono(Y, Rat(1)), mono(Z, Rat(1))};
    CHECK(same_span(sph_transl.basis, xyz));

    CHECK(image_basis(unit_sphere(), gens).rank == 9);
    CHECK(image_basis(paraboloid(Rat(2), Rat(3)), b).rank == 6);
    CHECK(image_basis(paraboloid(Rat(2), Rat(2)), b).rank == 5);
}

TEST_CASE("stabilizer kernels") {
    const auto& b = se3_basis();
    const std::vector<AlgebraElement> cone_k = stabilizer_kernel(cone(rat(1, 5)), b);
    REQUIRE(cone_k.size() == 1);
    CHECK(cone_k[0] == b[2]); // rotation about the cone axis

    const std::vector<AlgebraElement> sph_k = stabilizer_kernel(unit_sphere(), b);
    CHECK(sph_k.size() == 3);
    for (const AlgebraElement& g : sph_k) CHECK(g.has_skew_block());

    const std::vector<AlgebraElement> par_k = stabilizer_kernel(paraboloid(Rat(2), Rat(2)), b);
    REQUIRE(par_k.size() == 1);
    CHECK(par_k[0] == b[2]);
    CHECK(stabilizer_kernel(paraboloid(Rat(2), Rat(3)), b).empty());

    // rank-nullity over the generator span
    const auto& gens = aff3_generators();
    CHECK(image_basis(unit_sphere(), gens).rank +
              static_cast<int>(stabilizer_kernel(unit_sphere(), gens).size()) ==
          static_cast<int>(gens.size()));
    CHECK(image_basis(cone(rat(1, 5)), b).rank +
              static_cast<int>(stabilizer_kernel(cone(rat(1, 5)), b).size()) ==
          static_cast<int>(b.size()));
}

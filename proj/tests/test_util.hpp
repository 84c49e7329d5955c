#pragma once

#include <random>

#include "envlie/group.hpp"
#include "envlie/motion.hpp"

namespace envlie::testutil {

/// Deterministic small random rationals for property tests.
class RatGen {
public:
    explicit RatGen(uint64_t seed) : rng_(seed) {}

    Rat next(long max_abs = 20, long max_den = 12) {
        std::uniform_int_distribution<long> num(-max_abs, max_abs);
        std::uniform_int_distribution<long> den(1, max_den);
        return rat(num(rng_), den(rng_));
    }

    Rat next_nonzero(long max_abs = 20, long max_den = 12) {
        for (;;) {
            Rat r = next(max_abs, max_den);
            if (sgn(r) != 0) return r;
        }
    }

    long next_int(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(rng_);
    }

private:
    std::mt19937_64 rng_;
};

/// Random exact SE3 element from Cayley rotations and a rational translation.
inline GroupElement random_se3(RatGen& gen) {
    GroupElement g = compose(GroupElement::cayley_rotation(0, gen.next(3, 5)),
                             GroupElement::cayley_rotation(2, gen.next(3, 5)));
    return compose(GroupElement::translation(gen.next(), gen.next(), gen.next()), g);
}

/// Random exact SE3 motion: Cayley rotations with linear rational parameters
/// composed with a polynomial translation.
inline RationalMotion random_se3_motion(RatGen& gen, const Rat& t_lo, const Rat& t_hi) {
    const RationalFunction t = RationalFunction::variable();
    RationalMotion rot = compose(
        RationalMotion::cayley_rotation(0, RationalFunction(gen.next(2, 5)) * t, t_lo, t_hi),
        RationalMotion::cayley_rotation(2, RationalFunction(gen.next(2, 5)) * t, t_lo, t_hi));
    RationalMotion tr = RationalMotion::translation(RationalFunction(gen.next()) * t,
                                                    RationalFunction(gen.next()) * t,
                                                    RationalFunction(gen.next()) * t, t_lo, t_hi);
    return compose(tr, rot);
}

} // namespace envlie::testutil

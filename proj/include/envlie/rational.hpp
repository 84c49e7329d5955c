#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace envlie {

/// Exact arbitrary-precision rational scalar. All symbolic computation in the
/// library runs on this type; doubles appear only when sampling geometry.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rat& x) { return sgn(x); }

inline Rat rat_abs(const Rat& x) { return ::abs(x); }

inline double to_double(const Rat& x) { return x.get_d(); }

std::string to_string(const Rat& x);

/// Parses "p/q", "p", or a plain decimal like "-1.25" into an exact rational.
Rat rat_from_string(std::string_view s);

bool is_integer(const Rat& x);

/// Exact square root when x is the square of a rational; nullopt otherwise.
/// Requires x >= 0.
std::optional<Rat> exact_sqrt(const Rat& x);

} // namespace envlie

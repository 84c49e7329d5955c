#pragma once

#include <span>
#include <vector>

#include "envlie/quadric.hpp"

namespace envlie {

/// Tangent map of the implicit representation at the identity:
/// the derivative at 0 of (qbar o c(t)^-1) for any curve c with c(0) = 1 and
/// c'(0) = gamma. In matrix form, -(M G + G^T M) with M = qbar.matrix(),
/// G = gamma.matrix(). Zero output means gamma stabilizes the surface.
Quadric dphi1(const Quadric& qbar, const AlgebraElement& gamma);

/// Same map applied to a rational-function-valued algebra element
/// (typically a body velocity t -> gamma'(t)).
BasicQuadric<RationalFunction> dphi1(const Quadric& qbar, const Mat4<RationalFunction>& gamma_fn);

struct ImageBasis {
    std::vector<Quadric> basis; ///< maximal independent subset of the generator images
    int rank = 0;
};

/// Basis and exact rank of span{dphi1(qbar, g) : g in span(gens)} inside the
/// 10-dimensional coefficient space.
ImageBasis image_basis(const Quadric& qbar, std::span<const AlgebraElement> gens);

/// Exact basis of {gamma in span(gens) : dphi1(qbar, gamma) = 0}, the symmetry
/// algebra of the surface inside the chosen generator span.
std::vector<AlgebraElement> stabilizer_kernel(const Quadric& qbar,
                                              std::span<const AlgebraElement> gens);

/// Exact span equality of two families of coefficient vectors.
bool same_span(std::span<const Quadric> a, std::span<const Quadric> b);

} // namespace envlie

#pragma once

#include "envlie/char_curve.hpp"

namespace envlie {

struct TraceOptions {
    double step = 1e-2;      ///< base arclength step, shrunk where curvature is high
    double tol = 1e-10;      ///< corrector residual target per quadric
    int max_points = 100000; ///< per branch
    double box_halfwidth = 8.0;
    int sweep_planes = 32;   ///< seed sweep resolution along the narrow axis
    int plane_grid = 12;     ///< Newton starting grid per sweep plane
};

struct TraceResult {
    std::vector<SampledCurve> branches;        ///< sorted by seed position
    std::vector<Vec3<double>> singular_points; ///< gradient-parallel stops
};

/// Predictor-corrector tracing of {f1 = 0} ∩ {f2 = 0} inside the sampling box.
/// Both quadrics are normalized by their largest coefficient before residual
/// checks. Deterministic for fixed options. Throws errc::no_intersection when
/// the seed sweep finds no curve point.
TraceResult generic_char_trace(const QuadricD& f1, const QuadricD& f2,
                               const TraceOptions& opts = {});

/// Gauss-Newton projection of a nearby point onto {f1 = 0} ∩ {f2 = 0}, with
/// both quadrics normalized by their largest coefficient internally. Returns
/// false when the tolerance is not reached (e.g. degenerate gradients).
bool project_to_intersection(const QuadricD& f1, const QuadricD& f2, Vec3<double>& p, double tol);

} // namespace envlie

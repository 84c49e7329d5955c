#pragma once

#include <json.hpp>

#include "envlie/envelope.hpp"
#include "envlie/roots.hpp"

namespace envlie {

/// Height along the elementary cone axis as a function of the curve parameter:
/// z(u) = -N(u) / (r D(u)), the third coordinate of the characteristic
/// parameterization. Throws errc::degenerate_plane when (k4,k5) = 0.
RationalFunction z_of_u(const ConeDerivativeSurface& d);

/// Where an interval endpoint comes from; poles are always open endpoints.
enum class USource : uint8_t { bound_min, bound_max, pole, window };

struct UEndpoint {
    Surd value;
    bool closed = false;
    USource source = USource::window;

    double approx() const { return value.approx(); }
};

struct UInterval {
    UEndpoint lo, hi;
};

struct TrimOptions {
    Rat u_window_lo = Rat(-100);
    Rat u_window_hi = Rat(100);
    double tracking_radius_factor = 3.0;
};

/// Exact solution set of z_min < z(u) < z_max as disjoint ascending intervals.
/// Endpoints are rational or quadratic surds (roots of N + r z_b D); poles of
/// z and tangential contacts are open, transversal boundary contacts closed.
/// Unbounded pieces are clipped to the u-window.
std::vector<UInterval> trim_u_intervals(const ConeDerivativeSurface& d, const Rat& z_min,
                                        const Rat& z_max, const TrimOptions& opts = {});

/// Exact membership of u in the closure semantics of the interval list.
bool intervals_contain(std::span<const UInterval> intervals, const Rat& u);

/// C1 piecewise-cubic Hermite interpolant u(t).
class HermiteSpline {
public:
    HermiteSpline() = default;
    HermiteSpline(std::vector<double> knots_t, std::vector<double> values_u,
                  std::vector<double> slopes);

    double eval(double t) const;
    double eval_derivative(double t) const;

    const std::vector<double>& knots() const { return t_; }
    const std::vector<double>& values() const { return u_; }
    const std::vector<double>& slopes() const { return m_; }

private:
    size_t segment(double t) const;
    std::vector<double> t_, u_, m_;
};

/// Values with prescribed slopes at strictly increasing knots; a NaN slope
/// marks a vertical-tangent knot and is replaced by a one-sided secant.
HermiteSpline fit_trim_spline(std::span<const double> knots_t, std::span<const double> values_u,
                              std::span<const double> slopes);

struct TrimBranch {
    USource bound = USource::bound_min; ///< which z-bound the branch follows
    std::vector<double> knots_t, values_u, slopes;
    HermiteSpline spline;
};

struct TrimRegion {
    Rat z_min, z_max;
    std::vector<Rat> t_samples;
    std::vector<std::vector<UInterval>> intervals; ///< per t, disjoint and sorted
    std::vector<TrimBranch> branches;
    std::vector<std::string> warnings; ///< skipped rows, branch splits
};

/// Per-t admissible u-intervals plus boundary curves grouped into continuous
/// branches by nearest-neighbor continuation and fitted with C1 splines.
/// Requires a cone system under a rigid motion.
TrimRegion trim_boundaries(const SurfaceSystem& sys, const Rat& z_min, const Rat& z_max,
                           std::span<const Rat> t_grid, const TrimOptions& opts = {});

/// Same, driven directly by the symbolic Theorem-2 coefficient family.
TrimRegion trim_boundaries(const ConeCharFamily& fam, const Rat& z_min, const Rat& z_max,
                           std::span<const Rat> t_grid, const TrimOptions& opts = {});

/// Mesh restricted to the region: every row samples u inside its admissible
/// intervals only (u_density samples per interval).
EnvelopeMesh export_trimmed_mesh(const SurfaceSystem& sys, const TrimRegion& region,
                                 int u_density, Schedule schedule = Schedule::openmp);

/// Domain JSON: {z_bounds, branches: [{knots_t, values_u, slopes}],
/// intervals: [{t, u_intervals: [[lo,hi],...]}]}.
nlohmann::json trim_region_to_json(const TrimRegion& region);

} // namespace envlie

#include "envlie/trimming.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace envlie {

RationalFunction z_of_u(const ConeDerivativeSurface& d) {
    if (classify_cone_char(d) == ConeCharKind::plane_degenerate)
        fail(errc::degenerate_plane, "z_of_u: derivative surface is a plane through the apex");
    return RationalFunction(-d.numerator_quadratic(), d.pole_quadratic() * d.r);
}

namespace {

struct Critical {
    Surd value;
    USource source;
};

/// Membership of the strict slab z_min < z(u) < z_max at a rational parameter:
/// sign conditions on the boundary quadratics, B1 D < 0 and B2 D > 0.
bool member_at(const Polynomial& b1, const Polynomial& b2, const Polynomial& dpoly, const Rat& u) {
    const int sd = sign_at(dpoly, u);
    if (sd == 0) return false;
    return sign_at(b1, u) * sd < 0 && sign_at(b2, u) * sd > 0;
}

void collect_roots(const Polynomial& q, USource source, std::vector<Critical>& out) {
    const QuadraticRoots roots = real_roots_quadratic(q.coeff(2), q.coeff(1), q.coeff(0));
    for (int i = 0; i < roots.count; ++i) out.push_back({roots.root[i], source});
}

} // namespace

std::vector<UInterval> trim_u_intervals(const ConeDerivativeSurface& d, const Rat& z_min,
                                        const Rat& z_max, const TrimOptions& opts) {
    if (!(z_min < z_max)) fail(errc::invalid_input, "trim bounds: need z_min < z_max");
    if (classify_cone_char(d) == ConeCharKind::plane_degenerate)
        fail(errc::degenerate_plane, "trim: derivative surface is a plane through the apex");
    const Rat& wlo = opts.u_window_lo;
    const Rat& whi = opts.u_window_hi;
    if (!(wlo < whi)) fail(errc::invalid_input, "trim: empty u-window");

    const Polynomial N = d.numerator_quadratic();
    const Polynomial D = d.pole_quadratic();
    const Polynomial B1 = N + D * Rat(d.r * z_min);
    const Polynomial B2 = N + D * Rat(d.r * z_max);
    if (B1.is_zero() || B2.is_zero()) return {}; // z sits exactly on a bound everywhere

    std::vector<Critical> criticals;
    collect_roots(D, USource::pole, criticals);
    collect_roots(B1, USource::bound_min, criticals);
    collect_roots(B2, USource::bound_max, criticals);
    std::erase_if(criticals, [&](const Critical& c) {
        return !(Surd(wlo) < c.value && c.value < Surd(whi));
    });
    std::sort(criticals.begin(), criticals.end(),
              [](const Critical& a, const Critical& b) { return a.value < b.value; });
    // merge exact duplicates; a pole wins (always an open endpoint)
    std::vector<Critical> merged;
    for (const Critical& c : criticals) {
        if (!merged.empty() && merged.back().value == c.value) {
            if (c.source == USource::pole) merged.back().source = USource::pole;
            continue;
        }
        merged.push_back(c);
    }

    // classify the pieces between consecutive critical points at exact
    // rational sample parameters
    const size_t pieces = merged.size() + 1;
    std::vector<bool> member(pieces);
    for (size_t i = 0; i < pieces; ++i) {
        const Surd a = i == 0 ? Surd(wlo) : merged[i - 1].value;
        const Surd b = i == merged.size() ? Surd(whi) : merged[i].value;
        member[i] = member_at(B1, B2, D, rational_between(a, b));
    }

    std::vector<UInterval> out;
    for (size_t i = 0; i < pieces; ++i) {
        if (!member[i]) continue;
        UInterval iv;
        if (i == 0) {
            iv.lo = {Surd(wlo), true, USource::window};
        } else {
            const bool tangency = member[i - 1]; // member on both sides: z touches the bound
            iv.lo = {merged[i - 1].value, merged[i - 1].source != USource::pole && !tangency,
                     merged[i - 1].source};
        }
        if (i == merged.size()) {
            iv.hi = {Surd(whi), true, USource::window};
        } else {
            const bool tangency = member[i + 1];
            iv.hi = {merged[i].value, merged[i].source != USource::pole && !tangency,
                     merged[i].source};
        }
        out.push_back(std::move(iv));
    }
    return out;
}

bool intervals_contain(std::span<const UInterval> intervals, const Rat& u) {
    const Surd s(u);
    for (const UInterval& iv : intervals) {
        const int clo = s.cmp(iv.lo.value);
        const int chi = s.cmp(iv.hi.value);
        const bool above = clo > 0 || (clo == 0 && iv.lo.closed);
        const bool below = chi < 0 || (chi == 0 && iv.hi.closed);
        if (above && below) return true;
    }
    return false;
}

HermiteSpline::HermiteSpline(std::vector<double> knots_t, std::vector<double> values_u,
                             std::vector<double> slopes)
    : t_(std::move(knots_t)), u_(std::move(values_u)), m_(std::move(slopes)) {
    if (t_.size() < 2 || t_.size() != u_.size() || t_.size() != m_.size())
        fail(errc::invalid_input, "Hermite spline needs matching arrays with >= 2 knots");
    for (size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i - 1] < t_[i])) fail(errc::invalid_input, "Hermite spline: knots must increase");
}

size_t HermiteSpline::segment(double t) const {
    if (t <= t_.front()) return 0;
    if (t >= t_.back()) return t_.size() - 2;
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    return static_cast<size_t>(it - t_.begin()) - 1;
}

double HermiteSpline::eval(double t) const {
    const size_t i = segment(t);
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * u_[i] + (s3 - 2 * s2 + s) * h * m_[i] +
           (-2 * s3 + 3 * s2) * u_[i + 1] + (s3 - s2) * h * m_[i + 1];
}

double HermiteSpline::eval_derivative(double t) const {
    const size_t i = segment(t);
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * u_[i] / h + (3 * s2 - 4 * s + 1) * m_[i] +
            (-6 * s2 + 6 * s) * u_[i + 1] / h + (3 * s2 - 2 * s) * m_[i + 1]);
}

HermiteSpline fit_trim_spline(std::span<const double> knots_t, std::span<const double> values_u,
                              std::span<const double> slopes) {
    if (knots_t.size() != values_u.size() || knots_t.size() != slopes.size())
        fail(errc::invalid_input, "fit_trim_spline: array sizes differ");
    std::vector<double> m(slopes.begin(), slopes.end());
    for (size_t i = 0; i < m.size(); ++i) {
        if (!std::isnan(m[i])) continue;
        // vertical-tangent knot: use the one-sided secant
        if (i + 1 < m.size())
            m[i] = (values_u[i + 1] - values_u[i]) / (knots_t[i + 1] - knots_t[i]);
        else if (i > 0)
            m[i] = (values_u[i] - values_u[i - 1]) / (knots_t[i] - knots_t[i - 1]);
        else
            m[i] = 0.0;
    }
    return HermiteSpline(std::vector<double>(knots_t.begin(), knots_t.end()),
                         std::vector<double>(values_u.begin(), values_u.end()), std::move(m));
}

namespace {

struct BoundaryQuadratic {
    // coefficients of B(u,t) = N + r z_b D in u, as functions of t
    RationalFunction c0, c1, c2;
    RationalFunction dc0, dc1, dc2;

    BoundaryQuadratic(const ConeCharFamily& fam, const Rat& z_b) {
        const RationalFunction r(fam.r);
        const RationalFunction zb(z_b);
        c2 = fam.k[0] * r + fam.k[2] + r * zb * fam.k[3];
        c1 = RationalFunction(Rat(-2)) * (fam.k[1] * r + r * zb * fam.k[4]);
        c0 = -fam.k[0] * r + fam.k[2] - r * zb * fam.k[3];
        dc0 = c0.derivative();
        dc1 = c1.derivative();
        dc2 = c2.derivative();
    }

    /// du/dt at a boundary point by implicit differentiation; NaN on a
    /// vertical tangent (dB/du = 0 there).
    double slope(const Rat& t, double u) const {
        const double bu = 2 * to_double(c2.eval(t)) * u + to_double(c1.eval(t));
        const double bt =
            (to_double(dc2.eval(t)) * u + to_double(dc1.eval(t))) * u + to_double(dc0.eval(t));
        const double scale = std::abs(bu) + std::abs(bt) + 1e-300;
        if (std::abs(bu) <= 1e-12 * scale) return std::numeric_limits<double>::quiet_NaN();
        return -bt / bu;
    }
};

struct BoundaryPoint {
    double u;
    double slope;
    USource bound;
};

struct ActiveBranch {
    USource bound;
    std::vector<double> t, u, m;
    size_t birth = 0;
};

} // namespace

TrimRegion trim_boundaries(const SurfaceSystem& sys, const Rat& z_min, const Rat& z_max,
                           std::span<const Rat> t_grid, const TrimOptions& opts) {
    if (sys.kind != ElementaryKind::cone)
        fail(errc::invalid_input, "trimming needs a cone elementary surface");
    return trim_boundaries(cone_char_family(sys.cone_r, sys.motion, sys.scale), z_min, z_max,
                           t_grid, opts);
}

TrimRegion trim_boundaries(const ConeCharFamily& fam, const Rat& z_min, const Rat& z_max,
                           std::span<const Rat> t_grid, const TrimOptions& opts) {
    const BoundaryQuadratic bq_min(fam, z_min), bq_max(fam, z_max);

    TrimRegion region;
    region.z_min = z_min;
    region.z_max = z_max;
    region.t_samples.assign(t_grid.begin(), t_grid.end());
    region.intervals.resize(t_grid.size());

    std::vector<ActiveBranch> active;
    std::vector<ActiveBranch> finished;
    std::deque<double> recent_steps;
    const double bootstrap_radius =
        0.25 * to_double(Rat(opts.u_window_hi - opts.u_window_lo));

    for (size_t row = 0; row < t_grid.size(); ++row) {
        const Rat& t = t_grid[row];
        std::vector<BoundaryPoint> points;
        try {
            const ConeDerivativeSurface d = fam.at(t);
            region.intervals[row] = trim_u_intervals(d, z_min, z_max, opts);
            for (const UInterval& iv : region.intervals[row])
                for (const UEndpoint* ep : {&iv.lo, &iv.hi}) {
                    if (ep->source != USource::bound_min && ep->source != USource::bound_max)
                        continue;
                    const double u = ep->approx();
                    const BoundaryQuadratic& bq =
                        ep->source == USource::bound_min ? bq_min : bq_max;
                    points.push_back({u, bq.slope(t, u), ep->source});
                }
        } catch (const Error& e) {
            region.warnings.push_back("row t=" + to_string(t) + " skipped: " + e.what());
            for (ActiveBranch& b : active) finished.push_back(std::move(b));
            active.clear();
            continue;
        }
        std::sort(points.begin(), points.end(), [](const BoundaryPoint& a, const BoundaryPoint& b) {
            if (a.bound != b.bound) return a.bound < b.bound;
            return a.u < b.u;
        });

        // tracking radius: a multiple of the median per-step displacement;
        // unlimited until enough history accumulates
        double radius = bootstrap_radius;
        if (recent_steps.size() >= 8) {
            std::vector<double> steps(recent_steps.begin(), recent_steps.end());
            std::nth_element(steps.begin(), steps.begin() + steps.size() / 2, steps.end());
            radius = opts.tracking_radius_factor * std::max(steps[steps.size() / 2], 1e-12);
        }

        std::vector<bool> point_used(points.size(), false);
        std::vector<bool> branch_extended(active.size(), false);
        struct Pair {
            double dist;
            size_t branch, point;
        };
        std::vector<Pair> pairs;
        for (size_t bi = 0; bi < active.size(); ++bi)
            for (size_t pi = 0; pi < points.size(); ++pi) {
                if (active[bi].bound != points[pi].bound) continue;
                const double dist = std::abs(active[bi].u.back() - points[pi].u);
                if (dist <= radius) pairs.push_back({dist, bi, pi});
            }
        std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            if (a.dist != b.dist) return a.dist < b.dist;
            if (a.branch != b.branch) return a.branch < b.branch;
            return a.point < b.point;
        });
        for (const Pair& pr : pairs) {
            if (branch_extended[pr.branch] || point_used[pr.point]) continue;
            recent_steps.push_back(pr.dist);
            if (recent_steps.size() > 100) recent_steps.pop_front();
            active[pr.branch].t.push_back(to_double(t));
            active[pr.branch].u.push_back(points[pr.point].u);
            active[pr.branch].m.push_back(points[pr.point].slope);
            branch_extended[pr.branch] = true;
            point_used[pr.point] = true;
        }
        // ambiguity: a leftover point still inside the radius of an extended
        // branch means the boundary forked; close the branch and let the
        // points seed new ones. Needs an established radius: with no step
        // history yet, unmatched points are just births.
        std::vector<bool> branch_split(active.size(), false);
        const bool radius_established = recent_steps.size() >= 8;
        for (size_t bi = 0; bi < active.size() && radius_established; ++bi) {
            if (!branch_extended[bi]) continue;
            for (size_t pi = 0; pi < points.size(); ++pi) {
                if (point_used[pi] || active[bi].bound != points[pi].bound) continue;
                const size_t last = active[bi].u.size() - 2; // pre-extension value
                if (std::abs(active[bi].u[last] - points[pi].u) <= radius) {
                    region.warnings.push_back("branch split at t=" + to_string(t) +
                                              ": two boundary points within the tracking radius");
                    branch_split[bi] = true;
                    break;
                }
            }
        }
        // close unmatched and split branches, open new ones for unmatched points
        std::vector<ActiveBranch> still_active;
        for (size_t bi = 0; bi < active.size(); ++bi) {
            if (branch_extended[bi] && !branch_split[bi]) {
                still_active.push_back(std::move(active[bi]));
            } else if (branch_split[bi]) {
                // drop the freshly added knot: the fork point belongs to the new branches
                ActiveBranch& b = active[bi];
                const double forked_t = b.t.back(), forked_u = b.u.back(), forked_m = b.m.back();
                b.t.pop_back();
                b.u.pop_back();
                b.m.pop_back();
                finished.push_back(std::move(b));
                ActiveBranch fresh;
                fresh.bound = finished.back().bound;
                fresh.birth = row;
                fresh.t.push_back(forked_t);
                fresh.u.push_back(forked_u);
                fresh.m.push_back(forked_m);
                still_active.push_back(std::move(fresh));
            } else {
                finished.push_back(std::move(active[bi]));
            }
        }
        active = std::move(still_active);
        for (size_t pi = 0; pi < points.size(); ++pi) {
            if (point_used[pi]) continue;
            ActiveBranch b;
            b.bound = points[pi].bound;
            b.birth = row;
            b.t.push_back(to_double(t));
            b.u.push_back(points[pi].u);
            b.m.push_back(points[pi].slope);
            active.push_back(std::move(b));
        }
    }
    for (ActiveBranch& b : active) finished.push_back(std::move(b));

    std::sort(finished.begin(), finished.end(), [](const ActiveBranch& a, const ActiveBranch& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.u.front() < b.u.front();
    });
    for (ActiveBranch& b : finished) {
        if (b.t.size() < 2) continue; // an isolated boundary point, nothing to fit
        TrimBranch out;
        out.bound = b.bound;
        out.knots_t = b.t;
        out.values_u = b.u;
        out.spline = fit_trim_spline(b.t, b.u, b.m);
        out.slopes = out.spline.slopes(); // verticals resolved to one-sided secants
        region.branches.push_back(std::move(out));
    }
    return region;
}

EnvelopeMesh export_trimmed_mesh(const SurfaceSystem& sys, const TrimRegion& region,
                                 int u_density, Schedule schedule) {
    if (u_density < 1) fail(errc::invalid_input, "export_trimmed_mesh: u_density must be >= 1");
    size_t max_intervals = 0;
    for (const auto& ivs : region.intervals) max_intervals = std::max(max_intervals, ivs.size());
    if (max_intervals == 0) fail(errc::empty_region, "trim region is empty");

    const ConeCharFamily fam = cone_char_family(sys.cone_r, sys.motion, sys.scale);
    const FamilyEvaluator family(sys.qbar, sys.motion, sys.scale);

    EnvelopeMesh mesh;
    mesh.n_rows = region.t_samples.size();
    mesh.n_cols = max_intervals * static_cast<size_t>(u_density);
    mesh.row_status.assign(mesh.n_rows, RowStatus::ok);
    mesh.row_t.resize(mesh.n_rows);
    mesh.vertices.assign(mesh.n_rows * mesh.n_cols, Vec3<double>{});
    mesh.residuals.assign(mesh.n_rows * mesh.n_cols, {0.0, 0.0});
    mesh.vertex_valid.assign(mesh.n_rows * mesh.n_cols, 0);
    mesh.col_sheet.resize(mesh.n_cols);
    for (size_t j = 0; j < mesh.n_cols; ++j)
        mesh.col_sheet[j] = static_cast<int>(j / static_cast<size_t>(u_density));

    auto do_row = [&](size_t row) {
        const Rat& t = region.t_samples[row];
        mesh.row_t[row] = to_double(t);
        const auto& ivs = region.intervals[row];
        if (ivs.empty()) {
            mesh.row_status[row] = RowStatus::empty;
            return;
        }
        try {
            const ConeDerivativeSurface d = fam.at(t);
            const HomogRationalCurve world = map_curve(cone_char_param(d), sys.motion.eval(t));
            const QuadricD f = family.f_at(t);
            const QuadricD ft = family.ft_at(t);
            for (size_t ii = 0; ii < ivs.size(); ++ii) {
                const double lo = ivs[ii].lo.approx();
                const double hi = ivs[ii].hi.approx();
                for (int j = 0; j < u_density; ++j) {
                    const double u = lo + (hi - lo) * ((j + 0.5) / u_density);
                    const size_t vi =
                        mesh.vertex_index(row, ii * static_cast<size_t>(u_density) +
                                                   static_cast<size_t>(j));
                    const Vec3<double> p = world.eval_affine(u);
                    mesh.vertices[vi] = p;
                    mesh.residuals[vi] = {std::abs(f.eval(p)), std::abs(ft.eval(p))};
                    mesh.vertex_valid[vi] = 1;
                }
            }
        } catch (const Error&) {
            mesh.row_status[row] = RowStatus::degenerate;
        }
    };

    if (schedule == Schedule::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(mesh.n_rows); ++i) do_row(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < mesh.n_rows; ++i) do_row(i);
    }

    double sum_f = 0, sum_ft = 0;
    for (size_t vi = 0; vi < mesh.vertices.size(); ++vi) {
        if (!mesh.vertex_valid[vi]) continue;
        mesh.max_res_f = std::max(mesh.max_res_f, mesh.residuals[vi].first);
        mesh.max_res_ft = std::max(mesh.max_res_ft, mesh.residuals[vi].second);
        sum_f += mesh.residuals[vi].first;
        sum_ft += mesh.residuals[vi].second;
        ++mesh.valid_vertices;
    }
    if (mesh.valid_vertices > 0) {
        mesh.mean_res_f = sum_f / static_cast<double>(mesh.valid_vertices);
        mesh.mean_res_ft = sum_ft / static_cast<double>(mesh.valid_vertices);
    }

    // faces only between vertices that exist on both rows, within one interval block
    for (size_t i = 0; i + 1 < mesh.n_rows; ++i) {
        if (mesh.row_status[i] != RowStatus::ok || mesh.row_status[i + 1] != RowStatus::ok)
            continue;
        for (size_t j = 0; j + 1 < mesh.n_cols; ++j) {
            if (mesh.col_sheet[j] != mesh.col_sheet[j + 1]) continue;
            const size_t a = mesh.vertex_index(i, j);
            const size_t b = mesh.vertex_index(i + 1, j);
            const size_t c = mesh.vertex_index(i + 1, j + 1);
            const size_t dd = mesh.vertex_index(i, j + 1);
            if (!mesh.vertex_valid[a] || !mesh.vertex_valid[b] || !mesh.vertex_valid[c] ||
                !mesh.vertex_valid[dd])
                continue;
            mesh.faces.push_back({static_cast<uint32_t>(a), static_cast<uint32_t>(b),
                                  static_cast<uint32_t>(c)});
            mesh.faces.push_back({static_cast<uint32_t>(a), static_cast<uint32_t>(c),
                                  static_cast<uint32_t>(dd)});
        }
    }
    return mesh;
}

nlohmann::json trim_region_to_json(const TrimRegion& region) {
    nlohmann::json j;
    j["z_bounds"] = {to_double(region.z_min), to_double(region.z_max)};
    j["branches"] = nlohmann::json::array();
    for (const TrimBranch& b : region.branches) {
        nlohmann::json jb;
        jb["knots_t"] = b.knots_t;
        jb["values_u"] = b.values_u;
        jb["slopes"] = b.slopes;
        j["branches"].push_back(std::move(jb));
    }
    j["intervals"] = nlohmann::json::array();
    for (size_t row = 0; row < region.t_samples.size(); ++row) {
        nlohmann::json ji;
        ji["t"] = to_double(region.t_samples[row]);
        ji["u_intervals"] = nlohmann::json::array();
        for (const UInterval& iv : region.intervals[row])
            ji["u_intervals"].push_back({iv.lo.approx(), iv.hi.approx()});
        j["intervals"].push_back(std::move(ji));
    }
    return j;
}

} // namespace envlie

#include "envlie/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace envlie {

namespace {

double max_abs_coeff(const QuadricD& q) {
    double m = 0;
    for (double c : q.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

QuadricD normalized(const QuadricD& q) {
    const double m = max_abs_coeff(q);
    if (m == 0) fail(errc::invalid_input, "tracer: zero quadric");
    std::array<double, 10> c;
    for (size_t i = 0; i < 10; ++i) c[i] = q[i] / m;
    return QuadricD(c);
}

Vec3<double> gradient(const QuadricD& q, const Vec3<double>& p) {
    const auto& c = q.coeffs();
    return {2 * c[0] * p.x + c[3] * p.y + c[4] * p.z + c[6],
            2 * c[1] * p.y + c[3] * p.x + c[5] * p.z + c[7],
            2 * c[2] * p.z + c[4] * p.x + c[5] * p.y + c[8]};
}

double norm(const Vec3<double>& v) { return std::sqrt(dot(v, v)); }

struct Corrector {
    const QuadricD& f1;
    const QuadricD& f2;
    double tol;

    // Gauss-Newton with the minimal-norm step J^T (J J^T)^-1 r; returns false
    // when it fails to reach tol or the gradients degenerate.
    bool project(Vec3<double>& p, bool* singular = nullptr) const {
        for (int it = 0; it < 60; ++it) {
            const double r1 = f1.eval(p), r2 = f2.eval(p);
            if (std::abs(r1) <= tol && std::abs(r2) <= tol) return true;
            const Vec3<double> g1 = gradient(f1, p), g2 = gradient(f2, p);
            const double a = dot(g1, g1), b = dot(g1, g2), c = dot(g2, g2);
            const double det = a * c - b * b;
            if (det <= 1e-14 * a * c || a == 0 || c == 0) {
                if (singular) *singular = true;
                return false;
            }
            const double l1 = (-r1 * c + r2 * b) / det;
            const double l2 = (-r2 * a + r1 * b) / det;
            Vec3<double> delta = g1 * l1 + g2 * l2;
            // damping: halve until the residual actually decreases
            const double base = std::abs(r1) + std::abs(r2);
            double scale = 1.0;
            for (int damp = 0; damp < 30; ++damp) {
                const Vec3<double> cand = p + delta * scale;
                if (std::abs(f1.eval(cand)) + std::abs(f2.eval(cand)) < base) {
                    p = cand;
                    break;
                }
                scale *= 0.5;
                if (damp == 29) return false;
            }
        }
        return false;
    }
};

struct BoxScan {
    Vec3<double> lo, hi;
    bool found = false;
};

// Coarse cell scan for sign changes of both quadrics: a cheap estimate of the
// curve's bounding box used to choose the sweep axis.
BoxScan scan_box(const QuadricD& f1, const QuadricD& f2, double half) {
    constexpr int n = 24;
    BoxScan out;
    out.lo = {half, half, half};
    out.hi = {-half, -half, -half};
    const double h = 2 * half / n;
    std::vector<double> v1((n + 1) * (n + 1) * (n + 1)), v2(v1.size());
    auto idx = [&](int i, int j, int k) { return (i * (n + 1) + j) * (n + 1) + k; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) {
                const Vec3<double> p{-half + i * h, -half + j * h, -half + k * h};
                v1[idx(i, j, k)] = f1.eval(p);
                v2[idx(i, j, k)] = f2.eval(p);
            }
    auto cell_mixed = [&](const std::vector<double>& v, int i, int j, int k) {
        bool pos = false, neg = false;
        for (int di = 0; di <= 1; ++di)
            for (int dj = 0; dj <= 1; ++dj)
                for (int dk = 0; dk <= 1; ++dk) {
                    const double val = v[idx(i + di, j + dj, k + dk)];
                    pos = pos || val >= 0;
                    neg = neg || val <= 0;
                }
        return pos && neg;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (!cell_mixed(v1, i, j, k) || !cell_mixed(v2, i, j, k)) continue;
                const Vec3<double> clo{-half + i * h, -half + j * h, -half + k * h};
                const Vec3<double> chi{clo.x + h, clo.y + h, clo.z + h};
                out.lo = {std::min(out.lo.x, clo.x), std::min(out.lo.y, clo.y),
                          std::min(out.lo.z, clo.z)};
                out.hi = {std::max(out.hi.x, chi.x), std::max(out.hi.y, chi.y),
                          std::max(out.hi.z, chi.z)};
                out.found = true;
            }
    return out;
}

double axis_coord(const Vec3<double>& p, int axis) {
    return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

void set_axis(Vec3<double>& p, int axis, double v) {
    if (axis == 0) p.x = v;
    else if (axis == 1) p.y = v;
    else p.z = v;
}

// Newton in the two in-plane coordinates with the sweep axis frozen.
bool plane_newton(const QuadricD& f1, const QuadricD& f2, int axis, Vec3<double>& p, double tol,
                  double bound) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    for (int it = 0; it < 40; ++it) {
        const double r1 = f1.eval(p), r2 = f2.eval(p);
        if (std::abs(r1) <= tol && std::abs(r2) <= tol) return true;
        const Vec3<double> g1 = gradient(f1, p), g2 = gradient(f2, p);
        const double a = axis_coord(g1, u), b = axis_coord(g1, v);
        const double c = axis_coord(g2, u), d = axis_coord(g2, v);
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-300) return false;
        const double du = (-r1 * d + r2 * b) / det;
        const double dv = (-r2 * a + r1 * c) / det;
        set_axis(p, u, axis_coord(p, u) + du);
        set_axis(p, v, axis_coord(p, v) + dv);
        if (std::abs(axis_coord(p, u)) > 3 * bound || std::abs(axis_coord(p, v)) > 3 * bound)
            return false;
    }
    return false;
}

struct Tracer {
    const QuadricD& f1;
    const QuadricD& f2;
    const TraceOptions& opts;
    Corrector corr;
    std::vector<Vec3<double>> singular_points;

    bool tangent(const Vec3<double>& p, Vec3<double>& t) const {
        const Vec3<double> g1 = gradient(f1, p), g2 = gradient(f2, p);
        const Vec3<double> cr = cross(g1, g2);
        const double n = norm(cr);
        if (n <= 1e-8 * norm(g1) * norm(g2)) return false;
        t = cr * (1.0 / n);
        return true;
    }

    bool inside(const Vec3<double>& p) const {
        const double b = opts.box_halfwidth;
        return std::abs(p.x) <= b && std::abs(p.y) <= b && std::abs(p.z) <= b;
    }

    // walk one direction from the seed; returns points past the seed
    std::vector<Vec3<double>> walk(const Vec3<double>& start, double dir, bool& closed) {
        std::vector<Vec3<double>> pts;
        Vec3<double> p = start;
        Vec3<double> t_prev;
        if (!tangent(p, t_prev)) {
            singular_points.push_back(p);
            return pts;
        }
        t_prev = t_prev * dir;
        double curvature = 1.0 / opts.box_halfwidth;
        closed = false;
        while (static_cast<int>(pts.size()) < opts.max_points) {
            const double radius = std::min(1.0 / std::max(curvature, 1e-12), opts.box_halfwidth);
            const double h = std::max(opts.step * radius, 1e-9 * opts.box_halfwidth);
            Vec3<double> cand = p + t_prev * h;
            bool singular = false;
            if (!corr.project(cand, &singular)) {
                if (singular) singular_points.push_back(cand);
                break;
            }
            Vec3<double> t_next;
            if (!tangent(cand, t_next)) {
                pts.push_back(cand);
                singular_points.push_back(cand);
                break;
            }
            if (dot(t_next, t_prev) < 0) t_next = t_next * -1.0;
            const Vec3<double> dt = t_next - t_prev;
            curvature = norm(dt) / h;
            pts.push_back(cand);
            if (!inside(cand)) break;
            if (pts.size() > 10 && norm(cand - start) < 0.75 * h) {
                closed = true;
                break;
            }
            p = cand;
            t_prev = t_next;
        }
        return pts;
    }

    SampledCurve trace(const Vec3<double>& seed) {
        SampledCurve branch;
        branch.seed = seed;
        branch.tol = opts.tol;
        bool closed = false;
        std::vector<Vec3<double>> fwd = walk(seed, +1.0, closed);
        branch.points.push_back(seed);
        branch.points.insert(branch.points.end(), fwd.begin(), fwd.end());
        if (!closed) {
            bool closed_back = false;
            std::vector<Vec3<double>> bwd = walk(seed, -1.0, closed_back);
            std::reverse(branch.points.begin(), branch.points.end());
            branch.points.insert(branch.points.end(), bwd.begin(), bwd.end());
            closed = closed_back;
        }
        branch.closed = closed;
        branch.residuals.reserve(branch.points.size());
        for (const Vec3<double>& p : branch.points)
            branch.residuals.emplace_back(std::abs(f1.eval(p)), std::abs(f2.eval(p)));
        return branch;
    }
};

double min_distance_to(const SampledCurve& b, const Vec3<double>& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3<double>& q : b.points) best = std::min(best, norm(q - p));
    return best;
}

double median_spacing(const SampledCurve& b) {
    if (b.points.size() < 2) return 0;
    std::vector<double> d;
    d.reserve(b.points.size() - 1);
    for (size_t i = 1; i < b.points.size(); ++i) d.push_back(norm(b.points[i] - b.points[i - 1]));
    std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
    return d[d.size() / 2];
}

} // namespace

bool project_to_intersection(const QuadricD& f1_in, const QuadricD& f2_in, Vec3<double>& p,
                             double tol) {
    const QuadricD f1 = normalized(f1_in);
    const QuadricD f2 = normalized(f2_in);
    const Corrector corr{f1, f2, tol};
    return corr.project(p);
}

TraceResult generic_char_trace(const QuadricD& f1_in, const QuadricD& f2_in,
                               const TraceOptions& opts) {
    const QuadricD f1 = normalized(f1_in);
    const QuadricD f2 = normalized(f2_in);
    Corrector corr{f1, f2, opts.tol};
    Tracer tracer{f1, f2, opts, corr, {}};

    // seed sweep: planes along the axis of smallest estimated curve extent
    BoxScan scan = scan_box(f1, f2, opts.box_halfwidth);
    Vec3<double> lo = scan.found ? scan.lo : Vec3<double>{-opts.box_halfwidth, -opts.box_halfwidth,
                                                          -opts.box_halfwidth};
    Vec3<double> hi = scan.found ? scan.hi
                                 : Vec3<double>{opts.box_halfwidth, opts.box_halfwidth,
                                                opts.box_halfwidth};
    // sweep planes perpendicular to each axis, widest estimated extent first;
    // components can lie entirely inside the planes of one sweep direction
    // (circles perpendicular to it), so all three directions are scanned and
    // re-found branches are deduplicated by distance
    const double ext[3] = {hi.x - lo.x, hi.y - lo.y, hi.z - lo.z};
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int a, int b) { return ext[a] > ext[b]; });

    TraceResult out;
    for (const int axis : order) {
        const int u = (axis + 1) % 3, v = (axis + 2) % 3;
        for (int pi = 0; pi < opts.sweep_planes; ++pi) {
            const double frac = (pi + 0.5) / opts.sweep_planes;
            const double w0 = axis_coord(lo, axis) + frac * ext[axis];
            for (int gi = 0; gi < opts.plane_grid; ++gi)
                for (int gj = 0; gj < opts.plane_grid; ++gj) {
                    Vec3<double> p{};
                    set_axis(p, axis, w0);
                    set_axis(p, u, axis_coord(lo, u) + (gi + 0.5) / opts.plane_grid * ext[u]);
                    set_axis(p, v, axis_coord(lo, v) + (gj + 0.5) / opts.plane_grid * ext[v]);
                    if (!plane_newton(f1, f2, axis, p, opts.tol, opts.box_halfwidth)) continue;
                    if (!tracer.inside(p)) continue;
                    bool taken = false;
                    for (const SampledCurve& b : out.branches) {
                        const double spacing =
                            std::max(median_spacing(b), 1e-6 * opts.box_halfwidth);
                        if (min_distance_to(b, p) < 2.5 * spacing) {
                            taken = true;
                            break;
                        }
                    }
                    if (taken) continue;
                    SampledCurve branch = tracer.trace(p);
                    if (branch.points.size() >= 2) out.branches.push_back(std::move(branch));
                }
        }
    }
    out.singular_points = std::move(tracer.singular_points);
    if (out.branches.empty() && out.singular_points.empty())
        fail(errc::no_intersection, "tracer: seed sweep found no intersection points");
    std::sort(out.branches.begin(), out.branches.end(),
              [](const SampledCurve& a, const SampledCurve& b) {
                  if (a.seed.x != b.seed.x) return a.seed.x < b.seed.x;
                  if (a.seed.y != b.seed.y) return a.seed.y < b.seed.y;
                  return a.seed.z < b.seed.z;
              });
    return out;
}

} // namespace envlie

#include "envlie/envelope.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace envlie {

SurfaceSystem make_cone_system(const Rat& r, RationalMotion motion) {
    return SurfaceSystem{cone(r), ElementaryKind::cone, r, std::move(motion),
                         RationalFunction(Rat(1)), "cone"};
}

SurfaceSystem make_sphere_system(RationalMotion motion) {
    return SurfaceSystem{unit_sphere(), ElementaryKind::sphere, Rat(), std::move(motion),
                         RationalFunction(Rat(1)), "sphere"};
}

SurfaceSystem make_paraboloid_system(const Rat& a, const Rat& b, RationalMotion motion) {
    return SurfaceSystem{paraboloid(a, b), ElementaryKind::paraboloid, Rat(), std::move(motion),
                         RationalFunction(Rat(1)), "paraboloid"};
}

SurfaceSystem make_custom_system(Quadric qbar, RationalMotion motion) {
    if (qbar.is_zero()) fail(errc::invalid_input, "custom system: zero quadric");
    return SurfaceSystem{std::move(qbar), ElementaryKind::custom, Rat(), std::move(motion),
                         RationalFunction(Rat(1)), "custom"};
}

FamilyEvaluator::FamilyEvaluator(const Quadric& qbar, const RationalMotion& m,
                                 const RationalFunction& scale) {
    const std::array<RationalFunction, 10> base = pullback_family(qbar, m);
    for (size_t i = 0; i < 10; ++i) {
        f_[i] = scale * base[i];
        ft_[i] = f_[i].derivative();
    }
}

namespace {

QuadricD normalized_eval(const std::array<RationalFunction, 10>& fam, const Rat& t) {
    std::array<Rat, 10> c;
    Rat max_abs(0);
    for (size_t i = 0; i < 10; ++i) {
        c[i] = fam[i].eval(t);
        Rat a = rat_abs(c[i]);
        if (a > max_abs) max_abs = a;
    }
    if (sgn(max_abs) == 0) fail(errc::invalid_input, "family vanishes identically at t");
    std::array<double, 10> d;
    for (size_t i = 0; i < 10; ++i) d[i] = to_double(Rat(c[i] / max_abs));
    return QuadricD(d);
}

} // namespace

QuadricD FamilyEvaluator::f_at(const Rat& t) const { return normalized_eval(f_, t); }
QuadricD FamilyEvaluator::ft_at(const Rat& t) const { return normalized_eval(ft_, t); }

namespace {

struct SystemContext {
    FamilyEvaluator family;
    std::array<RationalFunction, 10> h_elem; ///< lambda' qbar + lambda dphi1(vel(t))
    std::optional<ConeCharFamily> cone_fam;
    bool sphere_reducible = false; ///< quadratic part of h is a multiple of the sphere's

    explicit SystemContext(const SurfaceSystem& sys)
        : family(sys.qbar, sys.motion, sys.scale) {
        const BasicQuadric<RationalFunction> hfn = dphi1(sys.qbar, sys.motion.body_velocity_fn());
        const RationalFunction dl = sys.scale.derivative();
        for (size_t i = 0; i < 10; ++i)
            h_elem[i] = dl * RationalFunction(sys.qbar[i]) + sys.scale * hfn[i];
        if (sys.kind == ElementaryKind::cone) {
            try {
                cone_fam = cone_char_family(sys.cone_r, sys.motion, sys.scale);
            } catch (const Error&) {
                // non-rigid cone motion: fall back to the numeric tracer
            }
        }
        if (sys.kind == ElementaryKind::sphere)
            sphere_reducible = h_elem[1] == h_elem[0] && h_elem[2] == h_elem[0] &&
                               h_elem[3].is_zero() && h_elem[4].is_zero() && h_elem[5].is_zero();
    }

    Quadric h_at(const Rat& t) const {
        std::array<Rat, 10> c;
        for (size_t i = 0; i < 10; ++i) c[i] = h_elem[i].eval(t);
        return Quadric(std::move(c));
    }
};

struct RowData {
    RowStatus status = RowStatus::ok;
    std::vector<Vec3<double>> vertices;
    std::vector<std::pair<double, double>> residuals;
};

Mat4<double> matrix_to_double(const Mat4<Rat>& m) {
    Mat4<double> d;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d(i, j) = to_double(m(i, j));
    return d;
}

void fill_residuals(RowData& row, const SystemContext& ctx, const Rat& t) {
    const QuadricD f = ctx.family.f_at(t);
    const QuadricD ft = ctx.family.ft_at(t);
    row.residuals.reserve(row.vertices.size());
    for (const Vec3<double>& p : row.vertices)
        row.residuals.emplace_back(std::abs(f.eval(p)), std::abs(ft.eval(p)));
}

/// Angles of the two poles of the cone parameterization (roots of D) on the
/// projective u-line, as theta in [-pi/2, pi/2) with u = tan(theta). The
/// coefficients are normalized exactly first, so scaled derivative surfaces
/// sample bit-identical angles.
std::array<double, 2> pole_angles(const ConeDerivativeSurface& d) {
    const Rat& k4 = d.k[3];
    const Rat& k5 = d.k[4];
    if (sgn(k4) == 0) {
        // D = -2 k5 u: poles at u = 0 and u = infinity
        return {0.0, M_PI / 2};
    }
    const Rat m = std::max(rat_abs(k4), rat_abs(k5));
    const double a = to_double(Rat(k4 / m)), b = to_double(Rat(k5 / m));
    const double s = std::sqrt(b * b + a * a);
    const double u1 = (b - s) / a, u2 = (b + s) / a;
    double t1 = std::atan(u1), t2 = std::atan(u2);
    if (t1 > t2) std::swap(t1, t2);
    return {t1, t2};
}

RowData cone_row(const SurfaceSystem& sys, const SystemContext& ctx, const Rat& t, int u_samples,
                 const MeshOptions& opts) {
    RowData row;
    ConeDerivativeSurface d = ctx.cone_fam->at(t); // throws stationary_instant
    if (classify_cone_char(d) != ConeCharKind::rational) {
        row.status = RowStatus::degenerate;
        return row;
    }
    const HomogRationalCurve world = map_curve(cone_char_param(d), sys.motion.eval(t));
    const std::array<double, 2> poles = pole_angles(d);
    const int per_sheet = std::max(u_samples / 2, 2);
    const double arcs[2][2] = {{poles[0], poles[1]}, {poles[1], poles[0] + M_PI}};
    for (int sheet = 0; sheet < 2; ++sheet) {
        const double a = arcs[sheet][0], b = arcs[sheet][1];
        const double len = b - a;
        for (int j = 0; j < per_sheet; ++j) {
            const double frac = opts.sheet_margin + (1.0 - 2.0 * opts.sheet_margin) *
                                                        (per_sheet == 1 ? 0.5 : double(j) / (per_sheet - 1));
            row.vertices.push_back(world.eval_angle(a + frac * len));
        }
    }
    fill_residuals(row, ctx, t);
    return row;
}

RowData sphere_row(const SurfaceSystem& sys, const SystemContext& ctx, const Rat& t,
                   int u_samples) {
    RowData row;
    Quadric h = ctx.h_at(t);
    if (h.is_zero()) {
        row.status = RowStatus::stationary;
        return row;
    }
    // reduce modulo the sphere quadric: the quadratic part is mu (x^2+y^2+z^2)
    // (checked symbolically in the context), so h and the plane cut the same
    // curve out of the sphere
    Quadric plane = h - sys.qbar * h[0];
    if (plane.is_zero()) {
        row.status = RowStatus::stationary;
        return row;
    }
    const SphereSection section = sphere_char_circle(plane);
    if (section.kind != SphereSection::Kind::circle) {
        row.status = RowStatus::empty;
        return row;
    }
    // double-precision circle frame; exactness is not needed for sampling
    const Vec3<double> n{to_double(plane[6]), to_double(plane[7]), to_double(plane[8])};
    const Vec3<double> c{to_double(section.center.x), to_double(section.center.y),
                         to_double(section.center.z)};
    const double rho = std::sqrt(to_double(section.radius_sq));
    Vec3<double> axis = std::abs(n.x) <= std::abs(n.y) || std::abs(n.x) <= std::abs(n.z)
                            ? Vec3<double>{1, 0, 0}
                            : Vec3<double>{0, 1, 0};
    Vec3<double> e1 = cross(n, axis);
    e1 = e1 * (1.0 / std::sqrt(dot(e1, e1)));
    Vec3<double> e2 = cross(n, e1);
    e2 = e2 * (1.0 / std::sqrt(dot(e2, e2)));
    const Mat4<double> g = matrix_to_double(sys.motion.eval(t).matrix());
    row.vertices.reserve(static_cast<size_t>(u_samples));
    for (int j = 0; j < u_samples; ++j) {
        const double phi = 2.0 * M_PI * j / u_samples;
        const Vec3<double> p = c + e1 * (rho * std::cos(phi)) + e2 * (rho * std::sin(phi));
        row.vertices.push_back(apply_affine(g, p));
    }
    fill_residuals(row, ctx, t);
    return row;
}

std::vector<Vec3<double>> resample_by_arclength(const SampledCurve& curve, int n) {
    const std::vector<Vec3<double>>& pts = curve.points;
    std::vector<double> cum(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i) {
        const Vec3<double> d = pts[i] - pts[i - 1];
        cum[i] = cum[i - 1] + std::sqrt(dot(d, d));
    }
    const double total = cum.back();
    std::vector<Vec3<double>> out;
    out.reserve(static_cast<size_t>(n));
    size_t seg = 0;
    for (int j = 0; j < n; ++j) {
        const double target = curve.closed ? total * j / n : total * j / (n - 1);
        while (seg + 1 < cum.size() && cum[seg + 1] < target) ++seg;
        if (seg + 1 >= pts.size()) {
            out.push_back(pts.back());
            continue;
        }
        const double lo = cum[seg], hi = cum[seg + 1];
        const double w = hi > lo ? (target - lo) / (hi - lo) : 0.0;
        out.push_back(pts[seg] + (pts[seg + 1] - pts[seg]) * w);
    }
    return out;
}

RowData tracer_row(const SurfaceSystem& sys, const SystemContext& ctx, const Rat& t, int u_samples,
                   const MeshOptions& opts) {
    RowData row;
    Quadric h = ctx.h_at(t);
    if (h.is_zero()) {
        row.status = RowStatus::stationary;
        return row;
    }
    TraceResult traced = generic_char_trace(to_double(sys.qbar), to_double(h), opts.trace);
    if (opts.trace_branch >= static_cast<int>(traced.branches.size())) {
        row.status = RowStatus::empty;
        return row;
    }
    const SampledCurve& branch = traced.branches[static_cast<size_t>(opts.trace_branch)];
    if (branch.points.size() < 2) {
        row.status = RowStatus::empty;
        return row;
    }
    const QuadricD qbar_d = to_double(sys.qbar);
    const QuadricD h_d = to_double(h);
    const Mat4<double> g = matrix_to_double(sys.motion.eval(t).matrix());
    for (Vec3<double> p : resample_by_arclength(branch, u_samples)) {
        // arclength resampling interpolates between trace points; snap back
        // onto the curve before mapping
        project_to_intersection(qbar_d, h_d, p, opts.trace.tol);
        row.vertices.push_back(apply_affine(g, p));
    }
    fill_residuals(row, ctx, t);
    return row;
}

RowData compute_row(const SurfaceSystem& sys, const SystemContext& ctx, const Rat& t,
                    int u_samples, const MeshOptions& opts) {
    try {
        if (ctx.cone_fam) return cone_row(sys, ctx, t, u_samples, opts);
        if (sys.kind == ElementaryKind::sphere && ctx.sphere_reducible)
            return sphere_row(sys, ctx, t, u_samples);
        return tracer_row(sys, ctx, t, u_samples, opts);
    } catch (const Error& e) {
        RowData row;
        switch (e.code()) {
            case errc::stationary_instant: row.status = RowStatus::stationary; break;
            case errc::degenerate_plane:
            case errc::degenerate_ruling: row.status = RowStatus::degenerate; break;
            case errc::no_intersection:
            case errc::empty_region: row.status = RowStatus::empty; break;
            default: throw;
        }
        return row;
    }
}

EnvelopeMesh assemble(std::span<const Rat> t_grid, int n_cols, bool wrap_u,
                      const std::vector<RowData>& rows, const std::vector<int>& col_sheet) {
    EnvelopeMesh mesh;
    mesh.n_rows = t_grid.size();
    mesh.n_cols = static_cast<size_t>(n_cols);
    mesh.wrap_u = wrap_u;
    mesh.col_sheet = col_sheet;
    mesh.row_status.resize(mesh.n_rows);
    mesh.row_t.resize(mesh.n_rows);
    mesh.vertices.assign(mesh.n_rows * mesh.n_cols, Vec3<double>{});
    mesh.residuals.assign(mesh.n_rows * mesh.n_cols, {0.0, 0.0});

    double sum_f = 0, sum_ft = 0;
    for (size_t i = 0; i < mesh.n_rows; ++i) {
        mesh.row_t[i] = to_double(t_grid[i]);
        mesh.row_status[i] = rows[i].status;
        if (rows[i].status != RowStatus::ok) continue;
        for (size_t j = 0; j < mesh.n_cols; ++j) {
            mesh.vertices[mesh.vertex_index(i, j)] = rows[i].vertices[j];
            mesh.residuals[mesh.vertex_index(i, j)] = rows[i].residuals[j];
            mesh.max_res_f = std::max(mesh.max_res_f, rows[i].residuals[j].first);
            mesh.max_res_ft = std::max(mesh.max_res_ft, rows[i].residuals[j].second);
            sum_f += rows[i].residuals[j].first;
            sum_ft += rows[i].residuals[j].second;
            ++mesh.valid_vertices;
        }
    }
    if (mesh.valid_vertices > 0) {
        mesh.mean_res_f = sum_f / static_cast<double>(mesh.valid_vertices);
        mesh.mean_res_ft = sum_ft / static_cast<double>(mesh.valid_vertices);
    }
    return mesh;
}

void build_faces(EnvelopeMesh& mesh) {
    if (mesh.n_rows < 2 || mesh.n_cols < 2) return;
    for (size_t i = 0; i + 1 < mesh.n_rows; ++i) {
        if (mesh.row_status[i] != RowStatus::ok || mesh.row_status[i + 1] != RowStatus::ok)
            continue; // do not bridge skipped instants
        const size_t cols = mesh.n_cols;
        const size_t last = mesh.wrap_u ? cols : cols - 1;
        for (size_t j = 0; j < last; ++j) {
            const size_t jn = (j + 1) % cols;
            if (!mesh.col_sheet.empty() && mesh.col_sheet[j] != mesh.col_sheet[jn])
                continue; // no faces across the sheet seam
            const auto a = static_cast<uint32_t>(mesh.vertex_index(i, j));
            const auto b = static_cast<uint32_t>(mesh.vertex_index(i + 1, j));
            const auto c = static_cast<uint32_t>(mesh.vertex_index(i + 1, jn));
            const auto d = static_cast<uint32_t>(mesh.vertex_index(i, jn));
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
}

template <class RowFn>
std::vector<RowData> run_rows(std::span<const Rat> t_grid, Schedule schedule, RowFn&& fn) {
    std::vector<RowData> rows(t_grid.size());
    if (schedule == Schedule::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(t_grid.size()); ++i)
            rows[static_cast<size_t>(i)] = fn(t_grid[static_cast<size_t>(i)]);
    } else {
        for (size_t i = 0; i < t_grid.size(); ++i) rows[i] = fn(t_grid[i]);
    }
    return rows;
}

} // namespace

EnvelopeMesh envelope_mesh_sheets(const SurfaceSystem& sys, std::span<const Rat> t_grid,
                                  int u_samples, const MeshOptions& opts) {
    if (t_grid.size() < 2 || u_samples < 2)
        fail(errc::invalid_input, "envelope mesh needs at least a 2x2 grid");
    for (const Rat& t : t_grid)
        if (!sys.motion.contains(t)) fail(errc::out_of_domain, "t grid leaves the motion domain");
    const SystemContext ctx(sys);

    int n_cols = u_samples;
    std::vector<int> col_sheet;
    bool wrap = false;
    if (ctx.cone_fam) {
        const int per_sheet = std::max(u_samples / 2, 2);
        n_cols = 2 * per_sheet;
        col_sheet.resize(static_cast<size_t>(n_cols));
        for (int j = 0; j < n_cols; ++j) col_sheet[static_cast<size_t>(j)] = j < per_sheet ? 0 : 1;
    } else if (sys.kind == ElementaryKind::sphere) {
        wrap = true;
    }

    std::vector<RowData> rows = run_rows(t_grid, opts.schedule, [&](const Rat& t) {
        return compute_row(sys, ctx, t, u_samples, opts);
    });
    EnvelopeMesh mesh = assemble(t_grid, n_cols, wrap, rows, col_sheet);
    build_faces(mesh);
    return mesh;
}

EnvelopeMesh envelope_mesh(const SurfaceSystem& sys, std::span<const Rat> t_grid,
                           std::span<const Rat> u_grid, const MeshOptions& opts) {
    if (t_grid.size() < 2 || u_grid.size() < 2)
        fail(errc::invalid_input, "envelope mesh needs at least a 2x2 grid");
    for (const Rat& t : t_grid)
        if (!sys.motion.contains(t)) fail(errc::out_of_domain, "t grid leaves the motion domain");
    const SystemContext ctx(sys);
    const bool sphere_exact = sys.kind == ElementaryKind::sphere && ctx.sphere_reducible;
    if (!ctx.cone_fam && !sphere_exact)
        fail(errc::invalid_input, "explicit u-grid meshing needs a cone or sphere exact path");

    auto exact_row = [&](const Rat& t) -> RowData {
        try {
            HomogRationalCurve curve = [&] {
                if (ctx.cone_fam) {
                    ConeDerivativeSurface d = ctx.cone_fam->at(t);
                    return cone_char_param(d);
                }
                Quadric h = ctx.h_at(t);
                const SphereSection s = sphere_char_circle(h - sys.qbar * h[0]);
                if (s.kind != SphereSection::Kind::circle || !s.curve)
                    fail(errc::degenerate_plane,
                         "characteristic circle lacks a rational parameterization");
                return *s.curve;
            }();
            const HomogRationalCurve world = map_curve(curve, sys.motion.eval(t));
            RowData row;
            row.vertices.reserve(u_grid.size());
            for (const Rat& u : u_grid) row.vertices.push_back(world.eval_affine(to_double(u)));
            fill_residuals(row, ctx, t);
            return row;
        } catch (const Error& e) {
            RowData row;
            switch (e.code()) {
                case errc::stationary_instant: row.status = RowStatus::stationary; break;
                case errc::degenerate_plane:
                case errc::degenerate_ruling: row.status = RowStatus::degenerate; break;
                default: throw;
            }
            return row;
        }
    };

    std::vector<RowData> rows = run_rows(t_grid, opts.schedule, exact_row);
    EnvelopeMesh mesh = assemble(t_grid, static_cast<int>(u_grid.size()), false, rows, {});
    build_faces(mesh);
    return mesh;
}

ResidualReport verify_envelope(const SurfaceSystem& sys,
                               std::span<const std::pair<Rat, Vec3<double>>> points,
                               Schedule schedule) {
    const FamilyEvaluator family(sys.qbar, sys.motion, sys.scale);
    for (const auto& [t, p] : points)
        if (!sys.motion.contains(t))
            fail(errc::out_of_domain, "verify point outside the motion domain");
    ResidualReport report;
    report.entries.resize(points.size());

    auto eval_one = [&](size_t i) {
        const auto& [t, p] = points[i];
        const QuadricD f = family.f_at(t);
        const QuadricD ft = family.ft_at(t);
        report.entries[i] =
            ResidualReport::Entry{to_double(t), p, std::abs(f.eval(p)), std::abs(ft.eval(p))};
    };

    if (schedule == Schedule::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(points.size()); ++i) eval_one(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < points.size(); ++i) eval_one(i);
    }

    double sum_f = 0, sum_ft = 0;
    for (const auto& e : report.entries) {
        report.max_res_f = std::max(report.max_res_f, e.res_f);
        report.max_res_ft = std::max(report.max_res_ft, e.res_ft);
        sum_f += e.res_f;
        sum_ft += e.res_ft;
    }
    if (!report.entries.empty()) {
        report.mean_res_f = sum_f / static_cast<double>(report.entries.size());
        report.mean_res_ft = sum_ft / static_cast<double>(report.entries.size());
    }
    return report;
}

namespace {

void write_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

} // namespace

void export_obj(const EnvelopeMesh& mesh, const std::filesystem::path& path) {
    std::string out;
    std::vector<int64_t> remap(mesh.vertices.size(), -1);
    int64_t next = 1; // OBJ indices are 1-based
    for (size_t i = 0; i < mesh.n_rows; ++i) {
        if (mesh.row_status[i] != RowStatus::ok) continue;
        for (size_t j = 0; j < mesh.n_cols; ++j) {
            const size_t vi = mesh.vertex_index(i, j);
            if (!mesh.vertex_valid.empty() && !mesh.vertex_valid[vi]) continue;
            remap[vi] = next++;
            const Vec3<double>& p = mesh.vertices[vi];
            out += "v ";
            write_double(out, p.x);
            out += ' ';
            write_double(out, p.y);
            out += ' ';
            write_double(out, p.z);
            out += '\n';
        }
    }
    for (const auto& f : mesh.faces) {
        out += "f " + std::to_string(remap[f[0]]) + ' ' + std::to_string(remap[f[1]]) + ' ' +
               std::to_string(remap[f[2]]) + '\n';
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(errc::io_failure, "cannot open " + path.string());
    os << out;
    if (!os) fail(errc::io_failure, "write failed: " + path.string());
}

void export_residual_csv(const ResidualReport& report, const std::filesystem::path& path) {
    std::string out = "t,x,y,z,res_f,res_dft\n";
    for (const auto& e : report.entries) {
        write_double(out, e.t);
        out += ',';
        write_double(out, e.point.x);
        out += ',';
        write_double(out, e.point.y);
        out += ',';
        write_double(out, e.point.z);
        out += ',';
        write_double(out, e.res_f);
        out += ',';
        write_double(out, e.res_ft);
        out += '\n';
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(errc::io_failure, "cannot open " + path.string());
    os << out;
    if (!os) fail(errc::io_failure, "write failed: " + path.string());
}

} // namespace envlie

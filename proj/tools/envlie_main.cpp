// envlie: characteristic curves, envelopes and trimming of moving quadrics.
//
// Subcommands: dphi, char, envelope, trim, verify. Scenes are JSON files with
// exact rational coefficients; see scenes/ for bundled examples. Exit codes:
// 0 ok, 1 residual gate failed, 2 input error, 3 degenerate geometry.

#include <CLI11.hpp>
#include <json.hpp>

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "envlie/scene.hpp"

using namespace envlie;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitResidualGate = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case errc::degenerate_plane:
        case errc::degenerate_ruling:
        case errc::stationary_instant:
        case errc::no_intersection:
        case errc::empty_region:
            return kExitDegenerate;
        default:
            return kExitInput;
    }
}

void apply_thread_cap() {
    if (const char* env = std::getenv("ENVLIE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

fs::path output_path(const Scene& scene, const std::string& out_dir, const std::string& key,
                     const std::string& fallback) {
    std::string name = fallback;
    if (const auto it = scene.outputs.find(key); it != scene.outputs.end()) name = it->second;
    fs::path p(name);
    if (!out_dir.empty() && p.is_relative()) p = fs::path(out_dir) / p;
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(errc::io_failure, "cannot open " + path.string());
    os << text;
    if (!os) fail(errc::io_failure, "write failed: " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::string quadric_to_string(const Quadric& q) {
    std::string out;
    for (size_t i = 0; i < 10; ++i) {
        if (sgn(q[i]) == 0) continue;
        const bool neg = sgn(q[i]) < 0;
        Rat a = rat_abs(q[i]);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        const bool unit = a == 1 && i != 9;
        if (!unit) out += to_string(a);
        if (i != 9) {
            if (!unit) out += "*";
            out += kQuadricBasis[i];
        } else if (unit) {
            out += "1";
        }
    }
    return out.empty() ? "0" : out;
}

std::span<const AlgebraElement> generators_for(GroupTag tag) {
    if (tag == GroupTag::SE3) return se3_basis();
    return aff3_generators();
}

int cmd_dphi(const Scene& scene, const std::string& out_dir, bool as_json) {
    const SurfaceSystem& sys = scene.system;
    const auto gens = generators_for(sys.motion.tag());
    const ImageBasis img = image_basis(sys.qbar, gens);
    const std::vector<AlgebraElement> kernel = stabilizer_kernel(sys.qbar, gens);

    nlohmann::json j;
    j["group"] = tag_name(sys.motion.tag());
    j["rank"] = img.rank;
    j["kernel_dimension"] = kernel.size();
    std::string table;
    for (size_t i = 0; i < gens.size(); ++i) {
        const Quadric image = dphi1(sys.qbar, gens[i]);
        const std::string label = generator_label(sys.motion.tag(), i);
        table += label + " -> " + quadric_to_string(image) + "\n";
        nlohmann::json row;
        row["generator"] = label;
        nlohmann::json coeffs = nlohmann::json::array();
        for (size_t c = 0; c < 10; ++c) coeffs.push_back(to_string(image[c]));
        row["image"] = std::move(coeffs);
        j["images"].push_back(std::move(row));
    }
    table += "image rank: " + std::to_string(img.rank) + "\n";
    table += "stabilizer kernel dimension: " + std::to_string(kernel.size()) + "\n";

    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << table;
    if (!out_dir.empty()) write_json(output_path(scene, out_dir, "dphi", "dphi.json"), j);
    return kExitOk;
}

struct CharArtifacts {
    std::string csv = "u_or_theta,x,y,z,res_f,res_dft\n";
    nlohmann::json bezier;
    double max_res_f = 0, max_res_ft = 0;
    size_t samples = 0;
};

void append_sample(CharArtifacts& art, const QuadricD& f, const QuadricD& ft, double param,
                   const Vec3<double>& p) {
    const double rf = std::abs(f.eval(p));
    const double rft = std::abs(ft.eval(p));
    art.max_res_f = std::max(art.max_res_f, rf);
    art.max_res_ft = std::max(art.max_res_ft, rft);
    ++art.samples;
    art.csv += fmt(param) + "," + fmt(p.x) + "," + fmt(p.y) + "," + fmt(p.z) + "," + fmt(rf) +
               "," + fmt(rft) + "\n";
}

nlohmann::json bezier_to_json(const RationalBezier& bz, const Rat& u0, const Rat& u1) {
    nlohmann::json j;
    j["degree"] = bz.degree;
    j["u_interval"] = {to_string(u0), to_string(u1)};
    j["control_points_homogeneous"] = nlohmann::json::array();
    for (const auto& cp : bz.control)
        j["control_points_homogeneous"].push_back(
            {to_string(cp[0]), to_string(cp[1]), to_string(cp[2]), to_string(cp[3])});
    return j;
}

int cmd_char(const Scene& scene, const Rat& t0, const std::string& out_dir) {
    const SurfaceSystem& sys = scene.system;
    if (!sys.motion.contains(t0)) fail(errc::out_of_domain, "--t0 outside the motion domain");
    const FamilyEvaluator family(sys.qbar, sys.motion, sys.scale);
    const QuadricD fq = family.f_at(t0);
    const QuadricD ftq = family.ft_at(t0);
    const GroupElement g = sys.motion.eval(t0);
    CharArtifacts art;
    const int n = std::max(scene.options.u_samples, 2);

    bool have_bezier = false;
    bool traced_path = true;
    if (sys.kind == ElementaryKind::cone) {
        const ConeCharFamily fam = cone_char_family(sys.cone_r, sys.motion, sys.scale);
        const ConeDerivativeSurface d = fam.at(t0);
        const HomogRationalCurve world = map_curve(cone_char_param(d), g);
        for (int i = 0; i < n; ++i) {
            const double theta = -M_PI / 2 + M_PI * (i + 0.5) / n;
            const Vec3<double> p = world.eval_angle(theta);
            if (!std::isfinite(p.x + p.y + p.z) ||
                std::abs(p.x) + std::abs(p.y) + std::abs(p.z) > 1e8)
                continue;
            append_sample(art, fq, ftq, theta, p);
        }
        // Bezier net of the first sheet interior when both poles are finite
        const Polynomial D = d.pole_quadratic();
        const QuadraticRoots poles = real_roots_quadratic(D.coeff(2), D.coeff(1), D.coeff(0));
        if (poles.count == 2) {
            const double u1 = poles.root[0].approx(), u2 = poles.root[1].approx();
            const Rat lo(u1 + (u2 - u1) * 0.05);
            const Rat hi(u1 + (u2 - u1) * 0.95);
            if (lo < hi && !has_root_in(world.W(), lo, hi)) {
                art.bezier = bezier_to_json(curve_to_bezier(world, lo, hi), lo, hi);
                have_bezier = true;
            }
        }
        traced_path = false;
    } else if (sys.kind == ElementaryKind::sphere) {
        // elementary-frame derivative surface, reduced modulo the sphere
        const Quadric h_elem = derivative_surface_scaled(sys.qbar, sys.motion, sys.scale, t0);
        const Rat mu = h_elem[0];
        const Quadric plane = h_elem - sys.qbar * mu;
        const bool reducible = sgn(plane[0]) == 0 && sgn(plane[1]) == 0 && sgn(plane[2]) == 0 &&
                               sgn(plane[3]) == 0 && sgn(plane[4]) == 0 && sgn(plane[5]) == 0;
        if (reducible && !plane.is_zero()) {
            const SphereSection s = sphere_char_circle(plane);
            if (s.kind != SphereSection::Kind::circle)
                fail(errc::degenerate_plane, "characteristic degenerates to a point or void");
            if (s.curve) {
                const HomogRationalCurve world = map_curve(*s.curve, g);
                for (int i = 0; i < n; ++i) {
                    const double theta = -M_PI / 2 + M_PI * (i + 0.5) / n;
                    append_sample(art, fq, ftq, theta, world.eval_angle(theta));
                }
                art.bezier =
                    bezier_to_json(curve_to_bezier(world, Rat(0), Rat(1)), Rat(0), Rat(1));
                have_bezier = true;
                traced_path = false;
            }
        }
    }
    if (traced_path && art.samples == 0) {
        const Quadric h_elem = derivative_surface_scaled(sys.qbar, sys.motion, sys.scale, t0);
        const TraceResult traced =
            generic_char_trace(to_double(sys.qbar), to_double(h_elem), scene.options.trace);
        Mat4<double> gd;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) gd(a, b) = to_double(g.matrix()(a, b));
        for (size_t bi = 0; bi < traced.branches.size(); ++bi)
            for (const Vec3<double>& q : traced.branches[bi].points)
                append_sample(art, fq, ftq, static_cast<double>(bi), apply_affine(gd, q));
    }

    write_text(output_path(scene, out_dir, "char_csv", "char_samples.csv"), art.csv);
    if (have_bezier)
        write_json(output_path(scene, out_dir, "char_bezier", "char_bezier.json"), art.bezier);

    const bool pass = art.max_res_f <= scene.options.tol && art.max_res_ft <= scene.options.tol;
    std::cout << "samples: " << art.samples << "\n";
    std::cout << "max |f| residual: " << fmt(art.max_res_f) << "\n";
    std::cout << "max |df/dt| residual: " << fmt(art.max_res_ft) << "\n";
    std::cout << "gate (tol " << fmt(scene.options.tol) << "): " << (pass ? "pass" : "FAIL")
              << "\n";
    return pass ? kExitOk : kExitResidualGate;
}

nlohmann::json mesh_report(const EnvelopeMesh& mesh, double tol) {
    nlohmann::json j;
    j["rows"] = mesh.n_rows;
    j["cols"] = mesh.n_cols;
    j["valid_vertices"] = mesh.valid_vertices;
    j["faces"] = mesh.faces.size();
    j["max_res_f"] = mesh.max_res_f;
    j["max_res_dft"] = mesh.max_res_ft;
    j["mean_res_f"] = mesh.mean_res_f;
    j["mean_res_dft"] = mesh.mean_res_ft;
    j["tol"] = tol;
    int stationary = 0, degenerate = 0, empty = 0;
    for (const RowStatus s : mesh.row_status) {
        stationary += s == RowStatus::stationary;
        degenerate += s == RowStatus::degenerate;
        empty += s == RowStatus::empty;
    }
    j["rows_stationary"] = stationary;
    j["rows_degenerate"] = degenerate;
    j["rows_empty"] = empty;
    j["gate"] = mesh.max_res_f <= tol && mesh.max_res_ft <= tol;
    return j;
}

int cmd_envelope(const Scene& scene, const std::string& out_dir, Schedule schedule) {
    const SurfaceSystem& sys = scene.system;
    const std::vector<Rat> t_grid =
        uniform_grid(sys.motion.t_lo(), sys.motion.t_hi(), scene.options.t_samples);
    MeshOptions opts;
    opts.schedule = schedule;
    opts.sheet_margin = scene.options.margin;
    opts.trace = scene.options.trace;
    opts.trace_branch = scene.options.branch;

    const auto start = std::chrono::steady_clock::now();
    const EnvelopeMesh mesh = envelope_mesh_sheets(sys, t_grid, scene.options.u_samples, opts);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "envelope mesh: " << fmt(secs) << " s\n";

    export_obj(mesh, output_path(scene, out_dir, "obj", "envelope.obj"));
    const nlohmann::json report = mesh_report(mesh, scene.options.tol);
    write_json(output_path(scene, out_dir, "report", "envelope_report.json"), report);
    std::cout << report.dump(2) << "\n";
    if (mesh.valid_vertices == 0) fail(errc::empty_region, "no valid envelope rows");
    return report["gate"].get<bool>() ? kExitOk : kExitResidualGate;
}

int cmd_trim(const Scene& scene, const std::string& out_dir, Schedule schedule) {
    const SurfaceSystem& sys = scene.system;
    if (!scene.options.z_bounds)
        fail(errc::bad_scene, "trim needs options.z_bounds = [z_min, z_max] in the scene");
    const auto& [z_min, z_max] = *scene.options.z_bounds;
    TrimOptions topt;
    topt.u_window_lo = scene.options.u_window_lo;
    topt.u_window_hi = scene.options.u_window_hi;
    const std::vector<Rat> t_grid =
        uniform_grid(sys.motion.t_lo(), sys.motion.t_hi(), scene.options.t_samples);

    const auto start = std::chrono::steady_clock::now();
    const TrimRegion region = trim_boundaries(sys, z_min, z_max, t_grid, topt);
    const EnvelopeMesh mesh =
        export_trimmed_mesh(sys, region, std::max(scene.options.u_samples / 2, 2), schedule);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "trim: " << fmt(secs) << " s\n";

    export_obj(mesh, output_path(scene, out_dir, "trimmed_obj", "trimmed.obj"));
    write_json(output_path(scene, out_dir, "domain", "trim_domain.json"),
               trim_region_to_json(region));
    nlohmann::json report = mesh_report(mesh, scene.options.tol);
    report["branches"] = region.branches.size();
    report["warnings"] = region.warnings;
    write_json(output_path(scene, out_dir, "report", "trim_report.json"), report);
    std::cout << report.dump(2) << "\n";
    return report["gate"].get<bool>() ? kExitOk : kExitResidualGate;
}

int cmd_verify(const Scene& scene, const std::string& points_file, const std::string& out_dir,
               Schedule schedule) {
    std::ifstream is(points_file);
    if (!is) fail(errc::invalid_input, "cannot open points file: " + points_file);
    std::vector<std::pair<Rat, Vec3<double>>> points;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.find_first_of("0123456789") == std::string::npos)
            continue; // header row
        std::array<std::string, 4> cell;
        size_t pos = 0;
        for (int c = 0; c < 4; ++c) {
            const size_t comma = line.find(',', pos);
            if (comma == std::string::npos && c < 3)
                fail(errc::invalid_input,
                     "points file line " + std::to_string(lineno) + ": expected t,x,y,z");
            cell[static_cast<size_t>(c)] =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            pos = comma + 1;
        }
        points.emplace_back(
            rat_from_string(cell[0]),
            Vec3<double>{std::stod(cell[1]), std::stod(cell[2]), std::stod(cell[3])});
    }
    if (points.empty()) fail(errc::invalid_input, "points file has no data rows");

    const ResidualReport report = verify_envelope(scene.system, points, schedule);
    export_residual_csv(report, output_path(scene, out_dir, "verify_csv", "verify_residuals.csv"));

    bool pass = true;
    for (const auto& e : report.entries)
        pass = pass && e.res_f <= scene.options.tol && e.res_ft <= scene.options.tol;
    nlohmann::json j;
    j["points"] = report.entries.size();
    j["max_res_f"] = report.max_res_f;
    j["max_res_dft"] = report.max_res_ft;
    j["mean_res_f"] = report.mean_res_f;
    j["mean_res_dft"] = report.mean_res_ft;
    j["tol"] = scene.options.tol;
    j["gate"] = pass;
    std::cout << j.dump(2) << "\n";
    return pass ? kExitOk : kExitResidualGate;
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"characteristic curves and envelopes of moving quadrics"};
    app.require_subcommand(1);

    std::string scene_path, out_dir, t0_str = "0", points_file;
    int t_samples = 0, u_samples = 0;
    double tol = 0;
    bool serial = false, as_json = false;

    auto add_common = [&](CLI::App* cmd, bool with_grids) {
        cmd->add_option("--scene", scene_path, "scene JSON file")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--tol", tol, "residual gate tolerance");
        if (with_grids) {
            cmd->add_option("--t-samples", t_samples, "t grid size");
            cmd->add_option("--u-samples", u_samples, "u grid size");
        }
        cmd->add_flag("--serial", serial, "run the serial reference kernels");
    };

    CLI::App* dphi = app.add_subcommand("dphi", "tangent-map table, image rank, kernel");
    add_common(dphi, false);
    dphi->add_flag("--json", as_json, "print the table as JSON");

    CLI::App* chr = app.add_subcommand("char", "characteristic curve at --t0");
    add_common(chr, true);
    chr->add_option("--t0", t0_str, "instant, exact rational like 1/2")->required();

    CLI::App* env = app.add_subcommand("envelope", "sampled envelope surface + residual report");
    add_common(env, true);

    CLI::App* trim = app.add_subcommand("trim", "trimmed envelope patches for the z slab");
    add_common(trim, true);

    CLI::App* verify = app.add_subcommand("verify", "Theorem-1 residuals of candidate points");
    add_common(verify, false);
    verify->add_option("--points", points_file, "CSV of t,x,y,z rows")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        Scene scene = load_scene(scene_path);
        if (t_samples > 0) scene.options.t_samples = t_samples;
        if (u_samples > 0) scene.options.u_samples = u_samples;
        if (tol > 0) scene.options.tol = tol;
        const Schedule schedule = serial ? Schedule::serial : Schedule::openmp;

        if (*dphi) return cmd_dphi(scene, out_dir, as_json);
        if (*chr) return cmd_char(scene, rat_from_string(t0_str), out_dir);
        if (*env) return cmd_envelope(scene, out_dir, schedule);
        if (*trim) return cmd_trim(scene, out_dir, schedule);
        if (*verify) return cmd_verify(scene, points_file, out_dir, schedule);
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

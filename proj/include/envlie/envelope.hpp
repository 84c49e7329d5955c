#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "envlie/char_curve.hpp"
#include "envlie/tracer.hpp"

namespace envlie {

enum class ElementaryKind { cone, sphere, paraboloid, custom };

/// One-parameter system of surfaces F_t = g_t(elementary surface), optionally
/// with a scalar factor lambda(t) on the implicit equations (which leaves the
/// envelope unchanged).
struct SurfaceSystem {
    Quadric qbar;
    ElementaryKind kind = ElementaryKind::custom;
    Rat cone_r{};          ///< valid for kind == cone
    RationalMotion motion;
    RationalFunction scale{Rat(1)}; ///< lambda(t), non-vanishing on the domain
    std::string description;
};

SurfaceSystem make_cone_system(const Rat& r, RationalMotion motion);
SurfaceSystem make_sphere_system(RationalMotion motion);
SurfaceSystem make_paraboloid_system(const Rat& a, const Rat& b, RationalMotion motion);
SurfaceSystem make_custom_system(Quadric qbar, RationalMotion motion);

/// How the data-parallel kernels run. Both schedules produce bit-identical
/// results; the serial kernel is the reference the parallel one is tested
/// against.
enum class Schedule { serial, openmp };

enum class RowStatus : uint8_t { ok, stationary, degenerate, empty };

/// Sampled envelope: a (t,u) grid of world-space points with the Theorem-1
/// residuals |f| and |df/dt| stored per vertex (coefficient-normalized).
struct EnvelopeMesh {
    size_t n_rows = 0, n_cols = 0;
    bool wrap_u = false; ///< closed characteristic (circles): faces wrap in u
    std::vector<RowStatus> row_status;
    std::vector<double> row_t;
    std::vector<Vec3<double>> vertices;                ///< row-major, n_rows * n_cols
    std::vector<std::pair<double, double>> residuals;  ///< per vertex (|f|, |df/dt|)
    std::vector<int> col_sheet;                        ///< sheet index per column (cone: 0/1)
    std::vector<std::array<uint32_t, 3>> faces;        ///< triangles, mesh-local indices
    std::vector<uint8_t> vertex_valid;                 ///< empty means every vertex is valid

    double max_res_f = 0, max_res_ft = 0;
    double mean_res_f = 0, mean_res_ft = 0;
    size_t valid_vertices = 0;

    size_t vertex_index(size_t row, size_t col) const { return row * n_cols + col; }
};

struct MeshOptions {
    double sheet_margin = 0.05; ///< fraction of each pole-to-pole arc kept clear
    Schedule schedule = Schedule::openmp;
    TraceOptions trace;  ///< generic fallback settings
    int trace_branch = 0; ///< branch meshed by the generic fallback
};

/// Exact-path mesh on explicit parameter grids: vertex (i,j) is
/// g_{t_i}(chi_{t_i}(u_j)). Requires a cone system (SE3) or a sphere system
/// whose characteristic circles admit rational points at every grid t.
EnvelopeMesh envelope_mesh(const SurfaceSystem& sys, std::span<const Rat> t_grid,
                           std::span<const Rat> u_grid, const MeshOptions& opts = {});

/// General mesh: u samples are placed per row. Cones sample each sheet arc
/// between the poles of the parameterization (u_samples split over the two
/// sheets), spheres sample the full circle, anything else falls back to the
/// numeric tracer.
EnvelopeMesh envelope_mesh_sheets(const SurfaceSystem& sys, std::span<const Rat> t_grid,
                                  int u_samples, const MeshOptions& opts = {});

/// Theorem-1 residual report for arbitrary candidate points.
struct ResidualReport {
    struct Entry {
        double t;
        Vec3<double> point;
        double res_f;
        double res_ft;
    };
    std::vector<Entry> entries;
    double max_res_f = 0, max_res_ft = 0;
    double mean_res_f = 0, mean_res_ft = 0;
};

ResidualReport verify_envelope(const SurfaceSystem& sys,
                               std::span<const std::pair<Rat, Vec3<double>>> points,
                               Schedule schedule = Schedule::openmp);

/// Writes v/f records, floats with 17 significant digits, quads split into two
/// counter-clockwise triangles as seen from the (d/dt x d/du) side. Vertices of
/// skipped rows are omitted; duplicate vertices are kept as-is.
void export_obj(const EnvelopeMesh& mesh, const std::filesystem::path& path);

void export_residual_csv(const ResidualReport& report, const std::filesystem::path& path);

/// Evaluates the world-frame family f(.,t) and its t-derivative at rational t,
/// both normalized by their largest |coefficient|; shared by mesh and verify.
class FamilyEvaluator {
public:
    FamilyEvaluator(const Quadric& qbar, const RationalMotion& m, const RationalFunction& scale);

    QuadricD f_at(const Rat& t) const;
    QuadricD ft_at(const Rat& t) const;

private:
    std::array<RationalFunction, 10> f_, ft_;
};

} // namespace envlie

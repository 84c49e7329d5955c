// Benchmarks comparing the serial reference kernels against the OpenMP ones
// on the bundled moving-cone system: envelope meshing, point verification and
// trimmed-mesh extraction.

#include <benchmark/benchmark.h>

#include "envlie/scene.hpp"
#include "envlie/trimming.hpp"

using namespace envlie;

namespace {

SurfaceSystem cone_system() {
    const Polynomial q{Rat(517), Rat(788), Rat(1108)};
    auto rf = [&](long c0, long c1, long c2) {
        return RationalFunction(Polynomial{Rat(c0), Rat(c1), Rat(c2)}, q);
    };
    Mat4<RationalFunction> e;
    e(0, 0) = rf(123, -788, -468);
    e(0, 1) = rf(192, 848, 928);
    e(0, 2) = rf(-464, -736, 384);
    e(0, 3) = RationalFunction(Polynomial{rat(3, 2), Rat(2)});
    e(1, 0) = rf(256, 944, 864);
    e(1, 1) = rf(387, 268, 588);
    e(1, 2) = rf(228, 272, -368);
    e(1, 3) = RationalFunction(Polynomial{rat(1, 2), Rat(3)});
    e(2, 0) = rf(432, 608, -512);
    e(2, 1) = rf(-284, -496, 144);
    e(2, 2) = rf(-3, -1292, -972);
    e(2, 3) = RationalFunction(Polynomial{rat(3, 2), Rat(3)});
    e(3, 3) = RationalFunction(Rat(1));
    return make_cone_system(rat(1, 5), RationalMotion(std::move(e), Rat(0), Rat(1), GroupTag::SE3));
}

void bench_mesh(benchmark::State& state, Schedule schedule) {
    const SurfaceSystem sys = cone_system();
    const std::vector<Rat> t_grid = uniform_grid(Rat(0), Rat(1), static_cast<int>(state.range(0)));
    MeshOptions opts;
    opts.schedule = schedule;
    for (auto _ : state) {
        EnvelopeMesh mesh = envelope_mesh_sheets(sys, t_grid, 64, opts);
        benchmark::DoNotOptimize(mesh.max_res_f);
    }
}

void bench_verify(benchmark::State& state, Schedule schedule) {
    const SurfaceSystem sys = cone_system();
    const ConeCharFamily fam = cone_char_family(rat(1, 5), sys.motion);
    std::vector<std::pair<Rat, Vec3<double>>> points;
    for (int i = 1; i < state.range(0); ++i) {
        const Rat t0 = rat(i, static_cast<long>(state.range(0)));
        const HomogRationalCurve world =
            map_curve(cone_char_param(fam.at(t0)), sys.motion.eval(t0));
        for (int j = 0; j < 16; ++j)
            points.emplace_back(t0, world.eval_angle(-1.2 + 2.4 * j / 15.0));
    }
    for (auto _ : state) {
        ResidualReport report = verify_envelope(sys, points, schedule);
        benchmark::DoNotOptimize(report.max_res_f);
    }
}

void bench_trimmed(benchmark::State& state, Schedule schedule) {
    const SurfaceSystem sys = cone_system();
    const std::vector<Rat> t_grid = uniform_grid(Rat(0), Rat(1), static_cast<int>(state.range(0)));
    TrimOptions topt;
    topt.u_window_lo = Rat(-50);
    topt.u_window_hi = Rat(50);
    const TrimRegion region = trim_boundaries(sys, Rat(2), Rat(5), t_grid, topt);
    for (auto _ : state) {
        EnvelopeMesh mesh = export_trimmed_mesh(sys, region, 16, schedule);
        benchmark::DoNotOptimize(mesh.max_res_f);
    }
}

} // namespace

BENCHMARK_CAPTURE(bench_mesh, serial, Schedule::serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_mesh, openmp, Schedule::openmp)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_verify, serial, Schedule::serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_verify, openmp, Schedule::openmp)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_trimmed, serial, Schedule::serial)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_trimmed, openmp, Schedule::openmp)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

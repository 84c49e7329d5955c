#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>

#include "envlie/trimming.hpp"

namespace envlie {

struct SceneOptions {
    int t_samples = 40;
    int u_samples = 40;
    double tol = 1e-8;
    double margin = 0.05;
    std::optional<std::pair<Rat, Rat>> z_bounds;
    Rat u_window_lo = Rat(-100);
    Rat u_window_hi = Rat(100);
    int branch = 0;
    TraceOptions trace;
};

/// Scene file: elementary surface, exact rational motion, output paths and
/// sampling options. Rationals are serialized as "p/q" strings so parsing and
/// re-serialization are lossless.
struct Scene {
    SurfaceSystem system;
    SceneOptions options;
    std::map<std::string, std::string> outputs;
};

Scene scene_from_json(const nlohmann::json& j);
nlohmann::json scene_to_json(const Scene& scene);
Scene load_scene(const std::filesystem::path& path);

/// n exact rationals spanning [lo, hi] inclusive.
std::vector<Rat> uniform_grid(const Rat& lo, const Rat& hi, int n);

} // namespace envlie

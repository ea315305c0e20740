#pragma once

#include "vcfp/evolve.hpp"
#include "vcfp/initial.hpp"
#include "vcfp/model.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vcfp {

struct GridConfig {
    std::size_t n_v = 64;
    std::size_t n_g = 64;
    double tail_widths = 8.0;

    bool operator==(const GridConfig&) const = default;
};

enum class SteadyMethod { Nullspace, Marching };

struct SolverConfig {
    SteadyMethod method = SteadyMethod::Nullspace;
    double steady_tol = 1e-10;
    std::size_t max_iter = 200;
    double march_dt = 1.0;
    double march_tol = 1e-11;
    std::size_t max_steps = 100000;
    double dt = 0.05;
    double t_end = 40.0;
    Scheme scheme = Scheme::ImplicitEuler;
    double l2_threshold = 1e-6;

    bool operator==(const SolverConfig&) const = default;
};

struct DiagnosticsConfig {
    double beta = 4.0 / 3.0 - 0.01;
    std::size_t ladder_k_max = 8;
    std::vector<std::string> entropies{"sq_dev", "sq", "hlogh"};
    std::size_t snapshot_stride = 10;
    std::size_t random_samples = 50;
    double c_plus_min = 1.5;
    double c_plus_max = 10.0;
    std::size_t verify_steps = 40;

    bool operator==(const DiagnosticsConfig&) const = default;
};

struct OutputConfig {
    std::string directory = "out";
    bool snapshot = true;
    bool csv = true;
    bool json = true;
    bool dump_generator = false;

    bool operator==(const OutputConfig&) const = default;
};

enum class InitialKind { Uniform, Steady, Indicator, Rectangle, MaxwellianBump, Envelope };

struct InitialConfig {
    InitialKind kind = InitialKind::Rectangle;
    double c_plus = 3.0;
    double v_lo = 0.0;
    double v_hi = 0.5;
    double g_lo = 0.0;
    double g_hi = 1.0;
    double v0 = 0.5;
    double width = 0.1;

    Rectangle region() const { return {v_lo, v_hi, g_lo, g_hi}; }
    bool operator==(const InitialConfig&) const = default;
};

/// Every block of an experiment configuration file. Parsing is strict:
/// all blocks must be present and unknown keys are rejected.
struct RunConfig {
    ModelParams model;
    GridConfig grid;
    SolverConfig solver;
    DiagnosticsConfig diagnostics;
    OutputConfig output;
    InitialConfig initial;

    EvolveConfig evolve_config() const;
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

std::string_view steady_method_name(SteadyMethod m);
std::string_view initial_kind_name(InitialKind k);

} // namespace vcfp

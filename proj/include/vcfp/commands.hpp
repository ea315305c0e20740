#pragma once

#include "vcfp/config.hpp"
#include "vcfp/diagnostics.hpp"
#include "vcfp/evolve.hpp"
#include "vcfp/steady.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vcfp {

/// Process exit codes of the command-line tool.
enum ExitCode : int { Pass = 0, PropertyFailure = 1, ConfigurationError = 2, SolverFailure = 3 };

inline constexpr std::uint64_t default_seed = 20240601;
inline constexpr const char* output_dir_variable = "VCFP_OUT_DIR";

struct CommandOptions {
    std::filesystem::path out_dir;
    std::uint64_t seed = default_seed;
    std::ostream* log = nullptr;
};

/// --out wins, then the VCFP_OUT_DIR environment variable, then output.directory.
std::filesystem::path resolve_output_dir(const RunConfig& config, const std::optional<std::string>& cli_out);

/// One pass/fail line of a report. Report-only rows carry no threshold.
struct Check {
    enum class Kind { AtMost, AtLeast, Above, Report };

    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    Kind kind = Kind::AtMost;

    bool passed() const;
    std::string status() const;
};

Check at_most(std::string name, double value, double threshold);
Check at_least(std::string name, double value, double threshold);
Check above(std::string name, double value, double threshold);
Check report_only(std::string name, double value);

void write_checks_csv(std::ostream& out, const std::vector<Check>& checks);

/// Everything the steady command computes.
struct SteadyRun {
    Grid grid;
    GeneratorSet generators;
    SteadyState steady;
    EstimateSuite estimates;
    std::vector<LadderEntry> ladder;
    double g_marginal = 0.0;
    double g_marginal_vs_gaussian = 0.0;
    double z_quadrature = 0.0;
    double z_closed_form = 0.0;
    double firing = 0.0;
    std::vector<Check> checks;

    bool passed() const;
};

SteadyRun run_steady(const RunConfig& config);

/// Initial density described by the config's initial block.
DensityField make_initial(const RunConfig& config, const DensityField& steady, std::uint64_t seed);

/// Largest single-step increase of a series (0 when non-increasing).
double max_increase(const std::vector<double>& series);
/// Largest single-step decrease of a series (0 when non-decreasing).
double max_decrease(const std::vector<double>& series);

int cmd_steady(const RunConfig& config, const CommandOptions& options);
int cmd_evolve(const RunConfig& config, const CommandOptions& options);
int cmd_verify(const RunConfig& config, const CommandOptions& options);

enum class SweepParameter { A, SigmaE };
SweepParameter parse_sweep_parameter(const std::string& name);

int cmd_sweep(const RunConfig& config, SweepParameter parameter, const std::vector<double>& values,
              const CommandOptions& options);

} // namespace vcfp

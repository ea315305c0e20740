// Command-line driver: steady | evolve | verify | sweep.

#include "vcfp/commands.hpp"
#include "vcfp/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving solver for the voltage-conductance kinetic equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::uint64_t seed = vcfp::default_seed;
    std::string sweep_param = "a";
    std::vector<double> sweep_values{1.0, 0.5, 0.25};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment configuration (YAML)")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides VCFP_OUT_DIR and output.directory)");
        cmd->add_option("--seed", seed, "64-bit seed for random initial data");
    };
    auto* steady = app.add_subcommand("steady", "compute the stationary density and its estimates");
    auto* evolve = app.add_subcommand("evolve", "evolve an initial density towards the stationary state");
    auto* verify = app.add_subcommand("verify", "run the full property battery");
    auto* sweep = app.add_subcommand("sweep", "tabulate steady-state quantities against a or sigma_E");
    for (auto* cmd : {steady, evolve, verify, sweep}) add_common(cmd);
    sweep->add_option("--param", sweep_param, "parameter to sweep: a or sigma_E");
    sweep->add_option("--values", sweep_values, "parameter values")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : vcfp::ConfigurationError;
    }

    try {
        const vcfp::RunConfig config = vcfp::load_config(config_path);
        vcfp::CommandOptions options{vcfp::resolve_output_dir(config, out_dir), seed, &std::cout};
        if (*steady) return vcfp::cmd_steady(config, options);
        if (*evolve) return vcfp::cmd_evolve(config, options);
        if (*verify) return vcfp::cmd_verify(config, options);
        return vcfp::cmd_sweep(config, vcfp::parse_sweep_parameter(sweep_param), sweep_values, options);
    } catch (const vcfp::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return vcfp::ConfigurationError;
    }
}

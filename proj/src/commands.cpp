#include "vcfp/commands.hpp"

#include "vcfp/errors.hpp"
#include "vcfp/initial.hpp"
#include "vcfp/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace vcfp {

namespace {

using nlohmann::json;

constexpr double marginal_tolerance = 1e-10;
constexpr double mass_tolerance = 1e-13;
constexpr double column_sum_tolerance = 1e-12;
constexpr double annihilation_tolerance = 1e-13;
constexpr double cross_method_tolerance = 1e-8;
constexpr double uniqueness_tolerance = 1e-9;
constexpr double monotonicity_slack = 1e-12;
constexpr double z_tolerance = 1e-10;

std::ostream& log_of(const CommandOptions& options) { return options.log ? *options.log : std::cout; }

void log_checks(std::ostream& log, const std::vector<Check>& checks) {
    for (const Check& c : checks) {
        log << (c.kind == Check::Kind::Report ? "INFO" : (c.passed() ? "PASS" : "FAIL")) << "  " << c.name << " = "
            << format_double(c.value);
        if (c.kind != Check::Kind::Report) {
            const char* op = c.kind == Check::Kind::AtMost ? " <= " : (c.kind == Check::Kind::AtLeast ? " >= " : " > ");
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", c.threshold);
            log << "  (" << op << buf << ")";
        }
        log << '\n';
    }
}

json checks_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const Check& c : checks) {
        json row{{"name", c.name}, {"value", c.value}, {"status", c.status()}};
        if (c.kind != Check::Kind::Report) row["threshold"] = c.threshold;
        out.push_back(std::move(row));
    }
    return out;
}

json failures_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const Check& c : checks)
        if (!c.passed()) out.push_back(c.name);
    return out;
}

json params_json(const ModelParams& p) {
    return json{{"g_L", p.g_L}, {"V_E", p.V_E},   {"V_F", p.V_F},
                {"sigma_E", p.sigma_E}, {"g_in", p.g_in}, {"a", p.a}, {"g_F", g_threshold(p)}};
}

json grid_json(const Grid& g) {
    return json{{"n_v", g.n_v()}, {"n_g", g.n_g()}, {"v_max", g.v_max()}, {"g_max", g.g_max()}};
}

bool all_passed(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

double max_abs_difference(const DensityField& x, const DensityField& y) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
    return d;
}

std::string snapshot_text(const DensityField& density, const ModelParams& params) {
    std::ostringstream s;
    write_snapshot(s, density, params);
    return s.str();
}

void write_steady_outputs(const SteadyRun& run, const RunConfig& config, const std::filesystem::path& dir,
                          std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    if (config.output.snapshot)
        write_text_file(dir / "steady.snapshot", snapshot_text(run.steady.density, config.model));
    if (config.output.dump_generator) {
        std::ostringstream s;
        write_coordinate_text(run.generators.full, s);
        write_text_file(dir / "generator.coo", s.str());
    }
    if (config.output.csv) {
        std::ostringstream s;
        s << "k,q,d_q,d_q_root\n";
        for (const LadderEntry& e : run.ladder)
            s << e.k << ',' << format_double(e.q) << ',' << format_double(e.d_q) << ',' << format_double(e.root)
              << '\n';
        write_text_file(dir / "ladder.csv", s.str());
    }
    if (config.output.json) {
        json dq = json::array();
        for (const auto& [q, d] : run.estimates.d_q) dq.push_back({{"q", q}, {"d_q", d}});
        json ladder = json::array();
        for (const LadderEntry& e : run.ladder)
            ladder.push_back({{"k", e.k}, {"q", e.q}, {"d_q", e.d_q}, {"d_q_root", e.root}});
        json summary{
            {"command", "steady"},
            {"seed", seed},
            {"params", params_json(config.model)},
            {"grid", grid_json(run.grid)},
            {"method", run.steady.method},
            {"iterations", run.steady.iterations},
            {"residual", run.steady.residual},
            {"mass", run.steady.density.mass()},
            {"min_density", run.steady.density.min()},
            {"max_density", run.steady.density.max()},
            {"g_marginal_deviation", run.g_marginal},
            {"g_marginal_deviation_from_gaussian", run.g_marginal_vs_gaussian},
            {"Z_quadrature", run.z_quadrature},
            {"Z_closed_form", run.z_closed_form},
            {"firing_flux", run.firing},
            {"estimates",
             {{"K1", run.estimates.K1},
              {"K2", run.estimates.K2},
              {"K3", run.estimates.K3},
              {"F2", run.estimates.F2},
              {"flux_bound_slack", run.estimates.flux_bound_slack},
              {"d_q", dq}}},
            {"ladder", ladder},
            {"checks", checks_json(run.checks)},
            {"failures", failures_json(run.checks)},
            {"passed", run.passed()},
        };
        write_text_file(dir / "summary.json", summary.dump(2) + "\n");
    }
}

template <typename Fn>
int guarded(const CommandOptions& options, Fn&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        log_of(options) << "configuration error: " << e.what() << '\n';
        return ConfigurationError;
    } catch (const SolverError& e) {
        log_of(options) << "solver failure: " << e.what() << " (last residual " << format_double(e.last_residual())
                        << ")\n";
        return SolverFailure;
    } catch (const StructuralError& e) {
        log_of(options) << "structural failure: " << e.what() << '\n';
        return SolverFailure;
    }
}

} // namespace

std::filesystem::path resolve_output_dir(const RunConfig& config, const std::optional<std::string>& cli_out) {
    if (cli_out && !cli_out->empty()) return *cli_out;
    if (const char* env = std::getenv(output_dir_variable); env && *env) return env;
    return config.output.directory;
}

bool Check::passed() const {
    switch (kind) {
    case Kind::AtMost: return value <= threshold;
    case Kind::AtLeast: return value >= threshold;
    case Kind::Above: return value > threshold;
    case Kind::Report: return true;
    }
    return false;
}

std::string Check::status() const {
    if (kind == Kind::Report) return "report";
    return passed() ? "pass" : "fail";
}

Check at_most(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, Check::Kind::AtMost};
}
Check at_least(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, Check::Kind::AtLeast};
}
Check above(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, Check::Kind::Above};
}
Check report_only(std::string name, double value) { return {std::move(name), value, 0.0, Check::Kind::Report}; }

void write_checks_csv(std::ostream& out, const std::vector<Check>& checks) {
    out << "check,value,threshold,status\n";
    for (const Check& c : checks)
        out << c.name << ',' << format_double(c.value) << ','
            << (c.kind == Check::Kind::Report ? std::string() : format_double(c.threshold)) << ',' << c.status()
            << '\n';
}

bool SteadyRun::passed() const { return all_passed(checks); }

SteadyRun run_steady(const RunConfig& config) {
    config.validate();
    const Grid grid = build_grid(config.model, config.grid.n_v, config.grid.n_g, config.grid.tail_widths);
    GeneratorSet generators = assemble_generator_set(grid, config.model);
    SteadyState steady =
        config.solver.method == SteadyMethod::Nullspace
            ? solve_steady_nullspace(generators.full, config.solver.steady_tol, config.solver.max_iter)
            : solve_steady_marching(generators.full, config.solver.march_dt, config.solver.march_tol,
                                    config.solver.max_steps);

    SteadyRun run{grid, std::move(generators), std::move(steady), {}, {}, 0.0, 0.0, 0.0, 0.0, 0.0, {}};
    const DensityField& p = run.steady.density;
    run.estimates = estimate_suite(p, config.model);
    run.ladder = dq_ladder(p, config.model, config.diagnostics.beta, config.diagnostics.ladder_k_max);
    run.g_marginal = g_marginal_deviation(p, config.model);
    run.g_marginal_vs_gaussian = g_marginal_deviation_from_gaussian(p, config.model);
    run.z_quadrature = normalization_z(config.model, 1e-12);
    run.z_closed_form = normalization_z_closed_form(config.model);
    run.firing = firing_flux(p, config.model);

    const double residual_bound =
        config.solver.method == SteadyMethod::Nullspace ? config.solver.steady_tol : config.solver.march_tol;
    run.checks = {
        at_most("steady_residual", run.steady.residual, residual_bound),
        above("steady_min_density", p.min(), 0.0),
        at_most("steady_mass_error", std::abs(p.mass() - 1.0), mass_tolerance),
        at_most("g_marginal_deviation", run.g_marginal, marginal_tolerance),
        at_least("estimates_finite", run.estimates.all_finite ? 1.0 : 0.0, 1.0),
        at_least("flux_bound_slack", run.estimates.flux_bound_slack, 0.0),
        report_only("max_density", p.max()),
        report_only("firing_flux", run.firing),
        report_only("K1", run.estimates.K1),
        report_only("K2", run.estimates.K2),
        report_only("K3", run.estimates.K3),
        report_only("F2", run.estimates.F2),
        report_only("g_marginal_deviation_from_gaussian", run.g_marginal_vs_gaussian),
    };
    return run;
}

DensityField make_initial(const RunConfig& config, const DensityField& steady, std::uint64_t seed) {
    const Grid& grid = steady.grid();
    const InitialConfig& ic = config.initial;
    switch (ic.kind) {
    case InitialKind::Uniform: return uniform_initial(grid);
    case InitialKind::Steady: return steady;
    case InitialKind::Indicator: return indicator_initial(grid, ic.region());
    case InitialKind::Rectangle: return rectangle_envelope_initial(steady, ic.region(), ic.c_plus);
    case InitialKind::MaxwellianBump: return maxwellian_bump_initial(grid, config.model, ic.v0, ic.width);
    case InitialKind::Envelope: {
        std::mt19937_64 rng(seed);
        return envelope_sample(steady, ic.c_plus, rng);
    }
    }
    throw ConfigError("unhandled initial condition kind");
}

double max_increase(const std::vector<double>& series) {
    double worst = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) worst = std::max(worst, series[k] - series[k - 1]);
    return worst;
}

double max_decrease(const std::vector<double>& series) {
    double worst = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) worst = std::max(worst, series[k - 1] - series[k]);
    return worst;
}

int cmd_steady(const RunConfig& config, const CommandOptions& options) {
    return guarded(options, [&] {
        const SteadyRun run = run_steady(config);
        auto& log = log_of(options);
        log << "steady state on " << run.grid.n_v() << "x" << run.grid.n_g() << " (" << run.steady.method << ", "
            << run.steady.iterations << " iterations)\n";
        log_checks(log, run.checks);
        write_steady_outputs(run, config, options.out_dir, options.seed);
        return run.passed() ? Pass : PropertyFailure;
    });
}

int cmd_evolve(const RunConfig& config, const CommandOptions& options) {
    return guarded(options, [&] {
        const SteadyRun run = run_steady(config);
        const DensityField& steady = run.steady.density;
        const DensityField initial = make_initial(config, steady, options.seed);
        if (std::abs(initial.mass() - 1.0) > 1e-12)
            throw ConfigError("initial density must have unit mass");
        const Diagnostics diagnostics(steady, config.model);
        const EvolveConfig evolve = config.evolve_config();
        const auto stepper = make_stepper(run.generators, evolve);
        const EvolveResult result =
            evolve_run(*stepper, initial, evolve, [&](std::size_t step, double t, const DensityField& f) {
                return diagnostics.report(step, t, f);
            });

        std::vector<Check> checks;
        for (const std::string& tag : config.diagnostics.entropies) {
            const Entropy h = parse_entropy(tag);
            const auto index = static_cast<std::size_t>(
                std::find(all_entropies.begin(), all_entropies.end(), h) - all_entropies.begin());
            std::vector<double> series;
            for (const auto& r : result.series) series.push_back(r.entropy[index]);
            checks.push_back(
                at_most("entropy_" + std::string(entropy_name(h)) + "_max_increase", max_increase(series),
                        monotonicity_slack));
        }
        const double final_distance = result.series.back().weighted_l2_distance();
        checks.push_back(at_most("final_weighted_l2_distance", final_distance, config.solver.l2_threshold));
        std::vector<double> upper, lower;
        for (const auto& r : result.series) {
            upper.push_back(r.envelope.upper);
            lower.push_back(r.envelope.lower);
        }
        checks.push_back(report_only("c_plus_max_increase", max_increase(upper)));
        checks.push_back(report_only("c_minus_max_decrease", max_decrease(lower)));
        checks.push_back(report_only("initial_regularity_constant",
                                     initial_regularity_constant(run.generators.full, initial, steady)));

        auto& log = log_of(options);
        log << "evolve " << scheme_name(evolve.scheme) << " dt=" << evolve.dt << " t_end=" << evolve.t_end
            << " from " << initial_kind_name(config.initial.kind) << '\n';
        log_checks(log, checks);
        const bool converged = final_distance <= config.solver.l2_threshold;
        if (!converged) log << "not converged: weighted L2 distance " << format_double(final_distance) << " above "
                            << format_double(config.solver.l2_threshold) << " at t_end\n";

        std::filesystem::create_directories(options.out_dir);
        if (config.output.csv) {
            std::ostringstream s;
            write_diagnostics_csv(s, result.series);
            write_text_file(options.out_dir / "evolve.csv", s.str());
        }
        if (config.output.snapshot)
            write_text_file(options.out_dir / "final.snapshot", snapshot_text(result.final_field, config.model));
        if (config.output.json) {
            json summary{{"command", "evolve"},
                         {"seed", options.seed},
                         {"params", params_json(config.model)},
                         {"grid", grid_json(run.grid)},
                         {"scheme", scheme_name(evolve.scheme)},
                         {"dt", evolve.dt},
                         {"t_end", evolve.t_end},
                         {"initial", initial_kind_name(config.initial.kind)},
                         {"converged", converged},
                         {"final_weighted_l2_distance", final_distance},
                         {"checks", checks_json(checks)},
                         {"failures", failures_json(checks)},
                         {"passed", all_passed(checks)}};
            write_text_file(options.out_dir / "evolve_summary.json", summary.dump(2) + "\n");
        }
        return all_passed(checks) ? Pass : PropertyFailure;
    });
}

int cmd_verify(const RunConfig& config, const CommandOptions& options) {
    return guarded(options, [&] {
        const SteadyRun run = run_steady(config);
        const Grid& grid = run.grid;
        const ModelParams& params = config.model;
        const DensityField& steady = run.steady.density;
        std::vector<Check> checks;

        // Generator structure.
        const StructureReport full = inspect_structure(run.generators.full);
        const StructureReport transport = inspect_structure(run.generators.transport);
        const StructureReport fp = inspect_structure(run.generators.fokker_planck);
        checks.push_back(at_least("generator_min_off_diagonal", full.min_off_diagonal, 0.0));
        checks.push_back(at_most("generator_max_column_sum", full.max_abs_column_sum, column_sum_tolerance));
        checks.push_back(at_most("transport_max_column_sum", transport.max_abs_column_sum, column_sum_tolerance));
        checks.push_back(at_most("fokker_planck_max_column_sum", fp.max_abs_column_sum, column_sum_tolerance));
        checks.push_back(at_most("generator_max_column_nonzeros", static_cast<double>(full.max_column_nonzeros), 5.0));

        double reinjection_mismatch = 0.0;
        const SparseMatrix& T = run.generators.transport.matrix;
        for (std::size_t j = 0; j < grid.n_g(); ++j) {
            if (!(grid.g_center(j) > g_threshold(params))) continue;
            const auto first = static_cast<Eigen::Index>(grid.flat_index(0, j));
            const auto last = static_cast<Eigen::Index>(grid.flat_index(grid.n_v() - 1, j));
            reinjection_mismatch = std::max(reinjection_mismatch, std::abs(T.coeff(first, last) + T.coeff(last, last)));
        }
        checks.push_back(at_most("reinjection_mismatch", reinjection_mismatch, 0.0));

        std::vector<double> maxwell(grid.size());
        for (std::size_t j = 0; j < grid.n_g(); ++j)
            for (std::size_t i = 0; i < grid.n_v(); ++i)
                maxwell[grid.flat_index(i, j)] = maxwellian(params, grid.g_center(j));
        const std::vector<double> annihilated = vcfp::apply(run.generators.fokker_planck, maxwell);
        double annihilation = 0.0;
        for (double x : annihilated) annihilation = std::max(annihilation, std::abs(x));
        annihilation /= *std::max_element(maxwell.begin(), maxwell.end());
        checks.push_back(at_most("maxwellian_annihilation", annihilation, annihilation_tolerance));

        // Steady state.
        checks.insert(checks.end(), run.checks.begin(), run.checks.end());
        checks.push_back(at_most("z_quadrature_vs_closed_form",
                                 std::abs(run.z_quadrature - run.z_closed_form) / run.z_closed_form, z_tolerance));

        const SteadyState nullspace = config.solver.method == SteadyMethod::Nullspace
                                          ? run.steady
                                          : solve_steady_nullspace(run.generators.full, config.solver.steady_tol,
                                                                   config.solver.max_iter);
        const SteadyState marching = solve_steady_marching(run.generators.full, config.solver.march_dt,
                                                           config.solver.march_tol, config.solver.max_steps);
        checks.push_back(at_most("cross_method_agreement", max_abs_difference(nullspace.density, marching.density),
                                 cross_method_tolerance));

        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> positive(0.1, 1.0);
        DensityField start(grid, 0.0);
        for (std::size_t k = 0; k < grid.size(); ++k) start[k] = positive(rng);
        const SteadyState other = solve_steady_nullspace(run.generators.full, start, config.solver.steady_tol,
                                                         config.solver.max_iter);
        checks.push_back(at_most("random_start_uniqueness", max_abs_difference(nullspace.density, other.density),
                                 uniqueness_tolerance));

        // Comparison principle and entropy monotonicity along implicit Euler.
        const ImplicitStepper stepper(run.generators.full, config.solver.dt);
        std::uniform_real_distribution<double> envelope_draw(config.diagnostics.c_plus_min,
                                                             config.diagnostics.c_plus_max);
        double worst_excess = -std::numeric_limits<double>::infinity();
        double worst_upper_increase = 0.0;
        double worst_lower_decrease = 0.0;
        std::array<double, 3> worst_entropy_increase{};
        std::ostringstream trajectories;
        trajectories << "sample,c_plus,max_envelope_excess,c_plus_max_increase,c_minus_max_decrease,"
                        "entropy_sq_dev_max_increase,entropy_sq_max_increase,entropy_hlogh_max_increase,"
                        "final_entropy_sq_dev\n";
        for (std::size_t s = 0; s < config.diagnostics.random_samples; ++s) {
            const double c_plus = envelope_draw(rng);
            DensityField p = envelope_sample(steady, c_plus, rng);
            std::vector<double> upper, lower;
            std::array<std::vector<double>, 3> entropy;
            double excess = -std::numeric_limits<double>::infinity();
            for (std::size_t n = 0; n <= config.diagnostics.verify_steps; ++n) {
                if (n > 0) stepper.step_in_place(p);
                const Envelope e = envelope_constants(p, steady);
                excess = std::max(excess, e.upper - c_plus);
                upper.push_back(e.upper);
                lower.push_back(e.lower);
                for (std::size_t h = 0; h < all_entropies.size(); ++h)
                    entropy[h].push_back(relative_entropy(p, steady, all_entropies[h]));
            }
            worst_excess = std::max(worst_excess, excess);
            worst_upper_increase = std::max(worst_upper_increase, max_increase(upper));
            worst_lower_decrease = std::max(worst_lower_decrease, max_decrease(lower));
            trajectories << s << ',' << format_double(c_plus) << ',' << format_double(excess) << ','
                         << format_double(max_increase(upper)) << ',' << format_double(max_decrease(lower));
            for (std::size_t h = 0; h < all_entropies.size(); ++h) {
                const double inc = max_increase(entropy[h]);
                worst_entropy_increase[h] = std::max(worst_entropy_increase[h], inc);
                trajectories << ',' << format_double(inc);
            }
            trajectories << ',' << format_double(entropy[0].back()) << '\n';
        }
        if (config.diagnostics.random_samples > 0) {
            checks.push_back(at_most("comparison_envelope_excess", worst_excess, monotonicity_slack));
            checks.push_back(at_most("c_plus_max_increase", worst_upper_increase, monotonicity_slack));
            checks.push_back(at_most("c_minus_max_decrease", worst_lower_decrease, monotonicity_slack));
            for (std::size_t h = 0; h < all_entropies.size(); ++h)
                checks.push_back(at_most("entropy_" + std::string(entropy_name(all_entropies[h])) + "_max_increase",
                                         worst_entropy_increase[h], monotonicity_slack));
        }

        // d_q ladder: finite and monotone in k.
        bool ladder_finite = true;
        std::vector<double> roots;
        for (const LadderEntry& e : run.ladder) {
            ladder_finite = ladder_finite && std::isfinite(e.root);
            roots.push_back(e.root);
        }
        const double wiggle = std::min(max_increase(roots), max_decrease(roots)) / run.ladder.front().root;
        checks.push_back(at_least("dq_ladder_finite", ladder_finite ? 1.0 : 0.0, 1.0));
        checks.push_back(at_most("dq_ladder_monotone_violation", wiggle, 1e-12));
        for (const LadderEntry& e : run.ladder)
            checks.push_back(report_only("dq_root_k" + std::to_string(e.k), e.root));
        checks.push_back(report_only("dq_root_last_over_max_density", run.ladder.back().root / steady.max()));

        auto& log = log_of(options);
        log << "verify on " << grid.n_v() << "x" << grid.n_g() << " seed " << options.seed << '\n';
        log_checks(log, checks);

        std::filesystem::create_directories(options.out_dir);
        std::ostringstream csv;
        write_checks_csv(csv, checks);
        write_text_file(options.out_dir / "verify.csv", csv.str());
        write_text_file(options.out_dir / "trajectories.csv", trajectories.str());
        write_steady_outputs(run, config, options.out_dir, options.seed);
        const bool ok = all_passed(checks);
        log << (ok ? "all checks passed" : "some checks failed") << '\n';
        return ok ? Pass : PropertyFailure;
    });
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "a") return SweepParameter::A;
    if (name == "sigma_E") return SweepParameter::SigmaE;
    throw ConfigError("sweep parameter must be 'a' or 'sigma_E', got '" + name + "'");
}

int cmd_sweep(const RunConfig& config, SweepParameter parameter, const std::vector<double>& values,
              const CommandOptions& options) {
    return guarded(options, [&] {
        if (values.empty()) throw ConfigError("sweep needs at least one value");
        for (double v : values)
            if (!(v > 0.0)) throw ConfigError("sweep values must be positive");
        const std::string name = parameter == SweepParameter::A ? "a" : "sigma_E";
        auto& log = log_of(options);

        std::ostringstream table;
        table << "parameter,value,status,max_density,firing_flux,K1,K2,K3,F2,g_marginal_deviation,residual\n";
        bool all_ok = true;
        for (std::size_t idx = 0; idx < values.size(); ++idx) {
            RunConfig job = config;
            (parameter == SweepParameter::A ? job.model.a : job.model.sigma_E) = values[idx];
            const std::filesystem::path dir = options.out_dir / ("sweep_" + name + "_" + std::to_string(idx));
            table << name << ',' << format_double(values[idx]) << ',';
            try {
                const SteadyRun run = run_steady(job);
                write_steady_outputs(run, job, dir, options.seed);
                table << (run.passed() ? "pass" : "fail") << ',' << format_double(run.steady.density.max()) << ','
                      << format_double(run.firing) << ',' << format_double(run.estimates.K1) << ','
                      << format_double(run.estimates.K2) << ',' << format_double(run.estimates.K3) << ','
                      << format_double(run.estimates.F2) << ',' << format_double(run.g_marginal) << ','
                      << format_double(run.steady.residual) << '\n';
                all_ok = all_ok && run.passed();
                log << name << " = " << format_double(values[idx]) << ": max p* " << format_double(run.steady.density.max())
                    << ", firing flux " << format_double(run.firing) << '\n';
            } catch (const std::exception& e) {
                table << "error,,,,,,,,\n";
                all_ok = false;
                log << name << " = " << format_double(values[idx]) << ": " << e.what() << '\n';
            }
        }
        write_text_file(options.out_dir / "sweep.csv", table.str());
        return all_ok ? Pass : PropertyFailure;
    });
}

} // namespace vcfp

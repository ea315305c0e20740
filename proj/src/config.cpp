#include "vcfp/config.hpp"

#include "vcfp/diagnostics.hpp"
#include "vcfp/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace vcfp {

namespace {

// Reads the keys of one mapping and rejects any key nobody asked for.
class Block {
public:
    Block(const YAML::Node& root, std::string name) : name_(std::move(name)) {
        node_ = root[name_];
        if (!node_) throw ConfigError("missing configuration block '" + name_ + "'");
        if (!node_.IsMap()) throw ConfigError("configuration block '" + name_ + "' must be a mapping");
    }

    template <typename T>
    void read(const std::string& key, T& target) {
        known_.insert(key);
        const YAML::Node value = node_[key];
        if (!value) return;
        try {
            target = value.as<T>();
        } catch (const YAML::Exception& e) {
            throw ConfigError("bad value for '" + name_ + "." + key + "': " + e.what());
        }
    }

    void finish() const {
        for (const auto& entry : node_) {
            const auto key = entry.first.as<std::string>();
            if (!known_.contains(key)) throw ConfigError("unknown key '" + name_ + "." + key + "'");
        }
    }

private:
    std::string name_;
    YAML::Node node_;
    std::set<std::string> known_;
};

SteadyMethod parse_method(const std::string& s) {
    if (s == "nullspace") return SteadyMethod::Nullspace;
    if (s == "marching") return SteadyMethod::Marching;
    throw ConfigError("unknown steady method '" + s + "' (expected nullspace or marching)");
}

InitialKind parse_initial_kind(const std::string& s) {
    for (InitialKind k : {InitialKind::Uniform, InitialKind::Steady, InitialKind::Indicator, InitialKind::Rectangle,
                          InitialKind::MaxwellianBump, InitialKind::Envelope})
        if (initial_kind_name(k) == s) return k;
    throw ConfigError("unknown initial condition kind '" + s + "'");
}

} // namespace

std::string_view steady_method_name(SteadyMethod m) {
    return m == SteadyMethod::Nullspace ? "nullspace" : "marching";
}

std::string_view initial_kind_name(InitialKind k) {
    switch (k) {
    case InitialKind::Uniform: return "uniform";
    case InitialKind::Steady: return "steady";
    case InitialKind::Indicator: return "indicator";
    case InitialKind::Rectangle: return "rectangle";
    case InitialKind::MaxwellianBump: return "maxwellian_bump";
    case InitialKind::Envelope: return "envelope";
    }
    return "";
}

EvolveConfig RunConfig::evolve_config() const {
    return EvolveConfig{solver.dt, solver.t_end, solver.scheme, diagnostics.snapshot_stride};
}

void RunConfig::validate() const {
    model.validate();
    if (grid.n_v < 8 || grid.n_g < 8) throw ConfigError("grid needs n_v, n_g >= 8");
    if (!(grid.tail_widths >= 8.0)) throw ConfigError("grid.tail_widths must be at least 8");
    if (!(solver.steady_tol > 0.0) || solver.steady_tol > 1e-6)
        throw ConfigError("solver.steady_tol must lie in (0, 1e-6]");
    if (solver.max_iter == 0 || solver.max_steps == 0) throw ConfigError("iteration limits must be positive");
    if (!(solver.march_dt > 0.0) || !(solver.march_tol > 0.0))
        throw ConfigError("solver.march_dt and solver.march_tol must be positive");
    if (!(solver.l2_threshold > 0.0)) throw ConfigError("solver.l2_threshold must be positive");
    evolve_config().validate();
    if (!(diagnostics.beta > 1.0)) throw ConfigError("diagnostics.beta must exceed 1");
    for (const auto& e : diagnostics.entropies) parse_entropy(e);
    if (!(diagnostics.c_plus_min > 1.0) || diagnostics.c_plus_max < diagnostics.c_plus_min)
        throw ConfigError("diagnostics.c_plus range must satisfy 1 < c_plus_min <= c_plus_max");
    if (diagnostics.verify_steps == 0) throw ConfigError("diagnostics.verify_steps must be positive");
    if (output.directory.empty()) throw ConfigError("output.directory must not be empty");
    if (!(initial.v_lo <= initial.v_hi) || !(initial.g_lo <= initial.g_hi))
        throw ConfigError("initial rectangle bounds are inverted");
}

RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("configuration is not valid YAML: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("configuration must be a mapping of blocks");
    static const std::set<std::string> blocks{"model", "grid", "solver", "diagnostics", "output", "initial"};
    for (const auto& entry : root) {
        const auto key = entry.first.as<std::string>();
        if (!blocks.contains(key)) throw ConfigError("unknown configuration block '" + key + "'");
    }

    RunConfig c;
    {
        Block b(root, "model");
        b.read("g_L", c.model.g_L);
        b.read("V_E", c.model.V_E);
        b.read("V_F", c.model.V_F);
        b.read("sigma_E", c.model.sigma_E);
        b.read("g_in", c.model.g_in);
        b.read("a", c.model.a);
        b.finish();
    }
    {
        Block b(root, "grid");
        b.read("n_v", c.grid.n_v);
        b.read("n_g", c.grid.n_g);
        b.read("tail_widths", c.grid.tail_widths);
        b.finish();
    }
    {
        Block b(root, "solver");
        std::string method{steady_method_name(c.solver.method)};
        std::string scheme{scheme_name(c.solver.scheme)};
        b.read("method", method);
        b.read("steady_tol", c.solver.steady_tol);
        b.read("max_iter", c.solver.max_iter);
        b.read("march_dt", c.solver.march_dt);
        b.read("march_tol", c.solver.march_tol);
        b.read("max_steps", c.solver.max_steps);
        b.read("dt", c.solver.dt);
        b.read("t_end", c.solver.t_end);
        b.read("scheme", scheme);
        b.read("l2_threshold", c.solver.l2_threshold);
        b.finish();
        c.solver.method = parse_method(method);
        c.solver.scheme = parse_scheme(scheme);
    }
    {
        Block b(root, "diagnostics");
        b.read("beta", c.diagnostics.beta);
        b.read("ladder_k_max", c.diagnostics.ladder_k_max);
        b.read("entropies", c.diagnostics.entropies);
        b.read("snapshot_stride", c.diagnostics.snapshot_stride);
        b.read("random_samples", c.diagnostics.random_samples);
        b.read("c_plus_min", c.diagnostics.c_plus_min);
        b.read("c_plus_max", c.diagnostics.c_plus_max);
        b.read("verify_steps", c.diagnostics.verify_steps);
        b.finish();
    }
    {
        Block b(root, "output");
        b.read("directory", c.output.directory);
        b.read("snapshot", c.output.snapshot);
        b.read("csv", c.output.csv);
        b.read("json", c.output.json);
        b.read("dump_generator", c.output.dump_generator);
        b.finish();
    }
    {
        Block b(root, "initial");
        std::string kind{initial_kind_name(c.initial.kind)};
        b.read("kind", kind);
        b.read("c_plus", c.initial.c_plus);
        b.read("v_lo", c.initial.v_lo);
        b.read("v_hi", c.initial.v_hi);
        b.read("g_lo", c.initial.g_lo);
        b.read("g_hi", c.initial.g_hi);
        b.read("v0", c.initial.v0);
        b.read("width", c.initial.width);
        b.finish();
        c.initial.kind = parse_initial_kind(kind);
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& c) {
    YAML::Emitter out;
    out.SetDoublePrecision(std::numeric_limits<double>::max_digits10);
    out << YAML::BeginMap;

    out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "g_L" << YAML::Value << c.model.g_L;
    out << YAML::Key << "V_E" << YAML::Value << c.model.V_E;
    out << YAML::Key << "V_F" << YAML::Value << c.model.V_F;
    out << YAML::Key << "sigma_E" << YAML::Value << c.model.sigma_E;
    out << YAML::Key << "g_in" << YAML::Value << c.model.g_in;
    out << YAML::Key << "a" << YAML::Value << c.model.a;
    out << YAML::EndMap;

    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_v" << YAML::Value << c.grid.n_v;
    out << YAML::Key << "n_g" << YAML::Value << c.grid.n_g;
    out << YAML::Key << "tail_widths" << YAML::Value << c.grid.tail_widths;
    out << YAML::EndMap;

    out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "method" << YAML::Value << std::string(steady_method_name(c.solver.method));
    out << YAML::Key << "steady_tol" << YAML::Value << c.solver.steady_tol;
    out << YAML::Key << "max_iter" << YAML::Value << c.solver.max_iter;
    out << YAML::Key << "march_dt" << YAML::Value << c.solver.march_dt;
    out << YAML::Key << "march_tol" << YAML::Value << c.solver.march_tol;
    out << YAML::Key << "max_steps" << YAML::Value << c.solver.max_steps;
    out << YAML::Key << "dt" << YAML::Value << c.solver.dt;
    out << YAML::Key << "t_end" << YAML::Value << c.solver.t_end;
    out << YAML::Key << "scheme" << YAML::Value << std::string(scheme_name(c.solver.scheme));
    out << YAML::Key << "l2_threshold" << YAML::Value << c.solver.l2_threshold;
    out << YAML::EndMap;

    out << YAML::Key << "diagnostics" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "beta" << YAML::Value << c.diagnostics.beta;
    out << YAML::Key << "ladder_k_max" << YAML::Value << c.diagnostics.ladder_k_max;
    out << YAML::Key << "entropies" << YAML::Value << YAML::Flow << c.diagnostics.entropies;
    out << YAML::Key << "snapshot_stride" << YAML::Value << c.diagnostics.snapshot_stride;
    out << YAML::Key << "random_samples" << YAML::Value << c.diagnostics.random_samples;
    out << YAML::Key << "c_plus_min" << YAML::Value << c.diagnostics.c_plus_min;
    out << YAML::Key << "c_plus_max" << YAML::Value << c.diagnostics.c_plus_max;
    out << YAML::Key << "verify_steps" << YAML::Value << c.diagnostics.verify_steps;
    out << YAML::EndMap;

    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "directory" << YAML::Value << c.output.directory;
    out << YAML::Key << "snapshot" << YAML::Value << c.output.snapshot;
    out << YAML::Key << "csv" << YAML::Value << c.output.csv;
    out << YAML::Key << "json" << YAML::Value << c.output.json;
    out << YAML::Key << "dump_generator" << YAML::Value << c.output.dump_generator;
    out << YAML::EndMap;

    out << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << std::string(initial_kind_name(c.initial.kind));
    out << YAML::Key << "c_plus" << YAML::Value << c.initial.c_plus;
    out << YAML::Key << "v_lo" << YAML::Value << c.initial.v_lo;
    out << YAML::Key << "v_hi" << YAML::Value << c.initial.v_hi;
    out << YAML::Key << "g_lo" << YAML::Value << c.initial.g_lo;
    out << YAML::Key << "g_hi" << YAML::Value << c.initial.g_hi;
    out << YAML::Key << "v0" << YAML::Value << c.initial.v0;
    out << YAML::Key << "width" << YAML::Value << c.initial.width;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

} // namespace vcfp

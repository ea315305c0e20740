#pragma once

#include "vcfp/banded_lu.hpp"
#include "vcfp/density.hpp"
#include "vcfp/diagnostics.hpp"
#include "vcfp/operators.hpp"

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

namespace vcfp {

enum class Scheme { ImplicitEuler, LieSplit };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);

struct EvolveConfig {
    double dt = 0.05;
    double t_end = 20.0;
    Scheme scheme = Scheme::ImplicitEuler;
    std::size_t snapshot_stride = 1;

    void validate() const;
    std::size_t step_count() const;
};

/// Transport and Fokker-Planck parts together with their sum.
struct GeneratorSet {
    Generator transport;
    Generator fokker_planck;
    Generator full;
};

GeneratorSet assemble_generator_set(const Grid& grid, const ModelParams& params);

class Stepper {
public:
    virtual ~Stepper() = default;
    virtual double dt() const = 0;
    virtual void step_in_place(DensityField& field) const = 0;

    DensityField step(const DensityField& field) const {
        DensityField next = field;
        step_in_place(next);
        return next;
    }
};

/// (I - dt A) p_next = p, factored once. I - dt A is an M-matrix for every
/// dt > 0, so the step preserves nonnegativity, mass and the ordering of fields.
class ImplicitStepper final : public Stepper {
public:
    ImplicitStepper(const Generator& generator, double dt);
    double dt() const override { return dt_; }
    void step_in_place(DensityField& field) const override;

private:
    Grid grid_;
    double dt_;
    BandedLu lu_;
};

/// Implicit Fokker-Planck substep (one tridiagonal solve per v-column)
/// followed by an explicit upwind transport substep.
class LieSplitStepper final : public Stepper {
public:
    LieSplitStepper(const Generator& transport, const Generator& fokker_planck, double dt);
    double dt() const override { return dt_; }
    void step_in_place(DensityField& field) const override;

private:
    Grid grid_;
    double dt_;
    SparseMatrix transport_;
    // Factored tridiagonal I - dt FP, shared by every v-column.
    std::vector<double> sub_;
    std::vector<double> diag_;
    std::vector<double> sup_;
};

/// Largest stable explicit transport step: dv / max over faces |J_v|.
double transport_cfl_limit(const Grid& grid, const ModelParams& params);

DensityField step_implicit(const Generator& generator, const DensityField& field, double dt);
DensityField step_lie_split(const Generator& transport, const Generator& fokker_planck, const DensityField& field,
                            double dt);

std::unique_ptr<Stepper> make_stepper(const GeneratorSet& generators, const EvolveConfig& config);

using Observer = std::function<DiagnosticsReport(std::size_t step, double time, const DensityField& field)>;

struct EvolveResult {
    std::vector<DiagnosticsReport> series;
    DensityField final_field;
};

/// Steps to t_end, calling the observer at step 0, every snapshot_stride
/// steps, and at the final step.
EvolveResult evolve_run(const Stepper& stepper, const DensityField& initial, const EvolveConfig& config,
                        const Observer& observe);

} // namespace vcfp

#pragma once

#include "vcfp/density.hpp"
#include "vcfp/model.hpp"
#include "vcfp/steady.hpp"

#include <array>
#include <string_view>
#include <utility>
#include <vector>

namespace vcfp {

/// Convex functionals H used in the relative entropy sum H(p/p*) p* dv dg.
enum class Entropy { SquaredDeviation, Square, HLogH };

inline constexpr std::array<Entropy, 3> all_entropies{Entropy::SquaredDeviation, Entropy::Square, Entropy::HLogH};

std::string_view entropy_name(Entropy h);
Entropy parse_entropy(std::string_view name);

/// max_j |m_j - c M(g_j)| / max_j m_j with m_j the g-marginal and c the
/// least-squares proportionality constant.
double g_marginal_deviation(const DensityField& field, const ModelParams& params);

/// Deviation of the g-marginal from the continuous Z^{-1} M(g_j), relative to max m_j.
double g_marginal_deviation_from_gaussian(const DensityField& field, const ModelParams& params);

/// d_q = sum (g_j + g_L)^2 p^q dv dg.
double weighted_norm_dq(const DensityField& field, const ModelParams& params, double q);

struct LadderEntry {
    std::size_t k = 0;
    double q = 0.0;
    double d_q = 0.0;
    double root = 0.0;  ///< d_q^{1/q}
};

/// d_q along q = beta^k, k = 0..k_max.
std::vector<LadderEntry> dq_ladder(const DensityField& field, const ModelParams& params, double beta,
                                   std::size_t k_max);

struct EstimateSuite {
    double K1 = 0.0;  ///< sum over g-faces of exp(g^2/(8a)) |dp/dg| dv dg
    double K2 = 0.0;  ///< int sup_g p dv
    double K3 = 0.0;  ///< sup_v int J_v^2 p dg
    double F2 = 0.0;  ///< int int |J_v p|^2
    std::vector<std::pair<double, double>> d_q;  ///< (q, d_q) for q in {1, 1.2, 4/3 - 0.01}
    double flux_bound_slack = 0.0;              ///< K2 K3 - F2
    bool all_finite = false;
    bool flux_bound_holds = false;

    bool passed() const { return all_finite && flux_bound_holds; }
};

EstimateSuite estimate_suite(const DensityField& steady, const ModelParams& params);

/// sum H(p/p*) p* dv dg. Throws StructuralError if p* has a cell below 1e-300.
double relative_entropy(const DensityField& field, const DensityField& reference, Entropy h);

/// sum over interior g-faces of H''(h_face) |(h_{j+1} - h_j)/dg|^2 p*_face dv dg,
/// with h_face and p*_face the arithmetic means of the two adjacent cells.
double dissipation_g(const DensityField& field, const DensityField& reference, Entropy h);

struct Envelope {
    double lower = 0.0;  ///< C- = min p/p*
    double upper = 0.0;  ///< C+ = max p/p*
};

Envelope envelope_constants(const DensityField& field, const DensityField& reference);

/// L2(p*) norm of h minus its p*-weighted g-average in each v-column.
double flatness_in_g(const DensityField& field, const DensityField& reference);

/// Snapshot of every time-dependent diagnostic.
struct DiagnosticsReport {
    std::size_t step = 0;
    double time = 0.0;
    double mass = 0.0;
    std::array<double, 3> entropy{};  ///< indexed like all_entropies
    double dissipation = 0.0;         ///< for H = (h - 1)^2
    Envelope envelope;
    double flatness = 0.0;
    double g_marginal_deviation = 0.0;
    double firing_flux = 0.0;

    double weighted_l2_distance() const { return entropy[0]; }
};

/// Computes reports against a fixed reference steady state.
class Diagnostics {
public:
    Diagnostics(DensityField reference, ModelParams params);

    const DensityField& reference() const { return reference_; }
    DiagnosticsReport report(std::size_t step, double time, const DensityField& field) const;

private:
    DensityField reference_;
    ModelParams params_;
};

} // namespace vcfp

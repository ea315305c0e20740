#include "vcfp/diagnostics.hpp"

#include "vcfp/errors.hpp"
#include "vcfp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vcfp {

namespace {

constexpr double reference_floor = 1e-300;

void check_pair(const DensityField& field, const DensityField& reference) {
    if (!(field.grid() == reference.grid()))
        throw StructuralError("field and reference live on different grids");
    for (std::size_t k = 0; k < reference.size(); ++k)
        if (!(reference[k] >= reference_floor))
            throw StructuralError("reference density is not positive at cell " + std::to_string(k));
}

double entropy_value(Entropy h, double x) {
    switch (h) {
    case Entropy::SquaredDeviation: return (x - 1.0) * (x - 1.0);
    case Entropy::Square: return x * x;
    case Entropy::HLogH: return x > 0.0 ? x * std::log(x) : 0.0;
    }
    return 0.0;
}

double entropy_second_derivative(Entropy h, double x) {
    switch (h) {
    case Entropy::SquaredDeviation:
    case Entropy::Square: return 2.0;
    case Entropy::HLogH: return x > 0.0 ? 1.0 / x : std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

std::vector<double> g_marginal(const DensityField& field) {
    const Grid& grid = field.grid();
    std::vector<double> m(grid.n_g(), 0.0);
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < grid.n_v(); ++i) s += field(i, j);
        m[j] = s * grid.dv();
    }
    return m;
}

} // namespace

std::string_view entropy_name(Entropy h) {
    switch (h) {
    case Entropy::SquaredDeviation: return "sq_dev";
    case Entropy::Square: return "sq";
    case Entropy::HLogH: return "hlogh";
    }
    return "";
}

Entropy parse_entropy(std::string_view name) {
    for (Entropy h : all_entropies)
        if (entropy_name(h) == name) return h;
    throw ConfigError("unknown entropy tag '" + std::string(name) + "' (expected sq_dev, sq or hlogh)");
}

double g_marginal_deviation(const DensityField& field, const ModelParams& params) {
    const Grid& grid = field.grid();
    const std::vector<double> m = g_marginal(field);
    double mm = 0.0;
    double MM = 0.0;
    std::vector<double> M(grid.n_g());
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        M[j] = maxwellian(params, grid.g_center(j));
        mm += m[j] * M[j];
        MM += M[j] * M[j];
    }
    const double c = mm / MM;
    double dev = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j) dev = std::max(dev, std::abs(m[j] - c * M[j]));
    return dev / *std::max_element(m.begin(), m.end());
}

double g_marginal_deviation_from_gaussian(const DensityField& field, const ModelParams& params) {
    const Grid& grid = field.grid();
    const std::vector<double> m = g_marginal(field);
    const double Z = normalization_z_closed_form(params);
    double dev = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j)
        dev = std::max(dev, std::abs(m[j] - maxwellian(params, grid.g_center(j)) / Z));
    return dev / *std::max_element(m.begin(), m.end());
}

double weighted_norm_dq(const DensityField& field, const ModelParams& params, double q) {
    if (!(q >= 1.0)) throw ConfigError("d_q needs q >= 1");
    const Grid& grid = field.grid();
    double total = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        const double w = (grid.g_center(j) + params.g_L) * (grid.g_center(j) + params.g_L);
        double row = 0.0;
        for (std::size_t i = 0; i < grid.n_v(); ++i) row += std::pow(field(i, j), q);
        total += w * row;
    }
    return total * grid.cell_area();
}

std::vector<LadderEntry> dq_ladder(const DensityField& field, const ModelParams& params, double beta,
                                   std::size_t k_max) {
    std::vector<LadderEntry> ladder;
    ladder.reserve(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        const double q = std::pow(beta, static_cast<double>(k));
        const double d = weighted_norm_dq(field, params, q);
        ladder.push_back({k, q, d, std::pow(d, 1.0 / q)});
    }
    return ladder;
}

EstimateSuite estimate_suite(const DensityField& steady, const ModelParams& params) {
    const Grid& grid = steady.grid();
    const std::size_t nv = grid.n_v();
    const std::size_t ng = grid.n_g();
    EstimateSuite s;

    for (std::size_t j = 0; j + 1 < ng; ++j) {
        const double g = grid.g_face(j + 1);
        const double w = std::exp(g * g / (8.0 * params.a));
        for (std::size_t i = 0; i < nv; ++i) s.K1 += w * std::abs(steady(i, j + 1) - steady(i, j));
    }
    s.K1 *= grid.dv();

    for (std::size_t i = 0; i < nv; ++i) {
        double sup = 0.0;
        double flux_moment = 0.0;
        const double v = grid.v_center(i);
        for (std::size_t j = 0; j < ng; ++j) {
            const double p = steady(i, j);
            const double J = flux_v(params, v, grid.g_center(j));
            sup = std::max(sup, p);
            flux_moment += J * J * p;
            s.F2 += J * J * p * p;
        }
        s.K2 += sup;
        s.K3 = std::max(s.K3, flux_moment * grid.dg());
    }
    s.K2 *= grid.dv();
    s.F2 *= grid.cell_area();

    for (double q : {1.0, 1.2, 4.0 / 3.0 - 0.01}) s.d_q.emplace_back(q, weighted_norm_dq(steady, params, q));

    s.all_finite = std::isfinite(s.K1) && std::isfinite(s.K2) && std::isfinite(s.K3) && std::isfinite(s.F2);
    for (const auto& [q, d] : s.d_q) s.all_finite = s.all_finite && std::isfinite(d);
    s.flux_bound_slack = s.K2 * s.K3 - s.F2;
    s.flux_bound_holds = s.F2 <= s.K2 * s.K3;
    return s;
}

double relative_entropy(const DensityField& field, const DensityField& reference, Entropy h) {
    check_pair(field, reference);
    double total = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k)
        total += entropy_value(h, field[k] / reference[k]) * reference[k];
    return total * field.grid().cell_area();
}

double dissipation_g(const DensityField& field, const DensityField& reference, Entropy h) {
    check_pair(field, reference);
    const Grid& grid = field.grid();
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < grid.n_g(); ++j) {
        for (std::size_t i = 0; i < grid.n_v(); ++i) {
            const double h0 = field(i, j) / reference(i, j);
            const double h1 = field(i, j + 1) / reference(i, j + 1);
            const double dh = (h1 - h0) / grid.dg();
            if (dh == 0.0) continue;
            const double p_face = 0.5 * (reference(i, j) + reference(i, j + 1));
            total += entropy_second_derivative(h, 0.5 * (h0 + h1)) * dh * dh * p_face;
        }
    }
    return total * grid.cell_area();
}

Envelope envelope_constants(const DensityField& field, const DensityField& reference) {
    check_pair(field, reference);
    Envelope e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < field.size(); ++k) {
        const double h = field[k] / reference[k];
        e.lower = std::min(e.lower, h);
        e.upper = std::max(e.upper, h);
    }
    return e;
}

double flatness_in_g(const DensityField& field, const DensityField& reference) {
    check_pair(field, reference);
    const Grid& grid = field.grid();
    double total = 0.0;
    for (std::size_t i = 0; i < grid.n_v(); ++i) {
        double weight = 0.0;
        double mean = 0.0;
        for (std::size_t j = 0; j < grid.n_g(); ++j) {
            weight += reference(i, j);
            mean += field(i, j);
        }
        mean /= weight;
        for (std::size_t j = 0; j < grid.n_g(); ++j) {
            const double d = field(i, j) / reference(i, j) - mean;
            total += d * d * reference(i, j);
        }
    }
    return std::sqrt(total * grid.cell_area());
}

Diagnostics::Diagnostics(DensityField reference, ModelParams params)
    : reference_(std::move(reference)), params_(params) {
    check_pair(reference_, reference_);
}

DiagnosticsReport Diagnostics::report(std::size_t step, double time, const DensityField& field) const {
    DiagnosticsReport r;
    r.step = step;
    r.time = time;
    r.mass = field.mass();
    for (std::size_t e = 0; e < all_entropies.size(); ++e)
        r.entropy[e] = relative_entropy(field, reference_, all_entropies[e]);
    r.dissipation = dissipation_g(field, reference_, Entropy::SquaredDeviation);
    r.envelope = envelope_constants(field, reference_);
    r.flatness = flatness_in_g(field, reference_);
    r.g_marginal_deviation = g_marginal_deviation(field, params_);
    r.firing_flux = firing_flux(field, params_);
    return r;
}

} // namespace vcfp

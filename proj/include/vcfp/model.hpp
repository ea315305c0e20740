#pragma once

namespace vcfp {

/// Physical constants of the voltage-conductance model.
///
/// Voltages are measured from the leak potential (0). The firing potential
/// V_F must lie strictly between 0 and the excitatory reversal potential V_E.
struct ModelParams {
    double g_L = 1.0;     ///< leak conductance
    double V_E = 2.0;     ///< excitatory reversal potential
    double V_F = 1.0;     ///< firing potential
    double sigma_E = 1.0; ///< conductance time constant
    double g_in = 1.0;    ///< input conductance
    double a = 1.0;       ///< conductance noise level

    /// Throws ConfigError if any invariant is violated.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// v-flux J_v(v, g) = -g_L v + g (V_E - v).
inline double flux_v(const ModelParams& p, double v, double g) {
    return -p.g_L * v + g * (p.V_E - v);
}

/// Unnormalized Maxwellian exp(-(g - g_in)^2 / (2a)).
double maxwellian(const ModelParams& p, double g);

/// Conductance at which the flux through v = V_F changes sign.
inline double g_threshold(const ModelParams& p) {
    return p.g_L * p.V_F / (p.V_E - p.V_F);
}

/// Root of J_v(., g) for g < g_F; lies strictly inside (0, V_F).
inline double flux_root(const ModelParams& p, double g) {
    return g * p.V_E / (p.g_L + g);
}

/// Z = int_0^inf M(g) dg by adaptive Gauss-Kronrod quadrature on a truncated domain.
double normalization_z(const ModelParams& p, double quadrature_tol = 1e-12);

/// Closed form of the same integral through the error function.
double normalization_z_closed_form(const ModelParams& p);

} // namespace vcfp

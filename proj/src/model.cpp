#include "vcfp/model.hpp"

#include "vcfp/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace vcfp {

void ModelParams::validate() const {
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw ConfigError(std::string("model parameter '") + name + "' must be positive and finite");
    };
    positive(g_L, "g_L");
    positive(sigma_E, "sigma_E");
    positive(g_in, "g_in");
    positive(a, "a");
    positive(V_F, "V_F");
    if (!std::isfinite(V_E) || !(V_F < V_E))
        throw ConfigError("model parameters must satisfy 0 < V_F < V_E");
    const double gF = g_threshold(*this);
    if (!(gF > 0.0) || !std::isfinite(gF))
        throw ConfigError("derived threshold g_F is not positive and finite");
}

double maxwellian(const ModelParams& p, double g) {
    const double d = g - p.g_in;
    return std::exp(-d * d / (2.0 * p.a));
}

double normalization_z(const ModelParams& p, double quadrature_tol) {
    if (!(quadrature_tol > 0.0) || quadrature_tol > 1e-3)
        throw ConfigError("quadrature tolerance must lie in (0, 1e-3]");
    // Tail beyond g_in + 40 sqrt(a) is below exp(-800).
    const double upper = p.g_in + 40.0 * std::sqrt(p.a);
    // Split at the peak so the integrand is monotone on each piece.
    auto f = [&](double g) { return maxwellian(p, g); };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double left = Quad::integrate(f, 0.0, p.g_in, 15, quadrature_tol);
    const double right = Quad::integrate(f, p.g_in, upper, 15, quadrature_tol);
    return left + right;
}

double normalization_z_closed_form(const ModelParams& p) {
    const double s = std::sqrt(2.0 * p.a);
    return 0.5 * std::sqrt(std::numbers::pi) * s * (1.0 + std::erf(p.g_in / s));
}

} // namespace vcfp

#include "vcfp/diagnostics.hpp"
#include "vcfp/errors.hpp"
#include "vcfp/steady.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace vcfp;

namespace {

DensityField product_state(const Grid& grid, const ModelParams& p) {
    DensityField f(grid);
    for (std::size_t j = 0; j < grid.n_g(); ++j)
        for (std::size_t i = 0; i < grid.n_v(); ++i) f(i, j) = maxwellian(p, grid.g_center(j));
    f.normalize();
    return f;
}

DensityField steady_on(std::size_t n, const ModelParams& p) {
    const Grid grid = build_grid(p, n, n);
    return solve_steady_nullspace(assemble_full(grid, p)).density;
}

} // namespace

TEST_CASE("entropy tags round trip") {
    for (Entropy h : all_entropies) CHECK(parse_entropy(entropy_name(h)) == h);
    CHECK_THROWS_AS(parse_entropy("kl"), ConfigError);
}

TEST_CASE("g-marginal deviation of a uniform field") {
    const ModelParams p;
    const Grid grid = build_grid(p, 8, 16);
    const DensityField f(grid, 0.3);
    double sm = 0.0, smm = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        const double m = maxwellian(p, grid.g_center(j));
        sm += m;
        smm += m * m;
    }
    double expected = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j)
        expected = std::max(expected, std::abs(1.0 - maxwellian(p, grid.g_center(j)) * sm / smm));
    CHECK(g_marginal_deviation(f, p) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(g_marginal_deviation(product_state(grid, p), p) <= 1e-15);
}

TEST_CASE("g-marginal of the steady state against the continuous Gaussian") {
    const ModelParams p;
    const DensityField s = steady_on(64, p);
    CHECK(g_marginal_deviation(s, p) <= 1e-10);
    // Only the midpoint quadrature error of Z separates the two.
    CHECK(g_marginal_deviation_from_gaussian(s, p) <= 1e-2);
}

TEST_CASE("d_q of a uniform field equals the closed form minus the midpoint error") {
    const ModelParams p;
    const Grid grid = build_grid(p, 8, 32);
    const double u = 0.7;
    const DensityField f(grid, u);
    const double G = grid.g_max();
    const double dg = grid.dg();
    for (double q : {1.0, 1.5, 2.0, 3.7}) {
        const double expected = std::pow(u, q) * p.V_F * ((std::pow(G + 1.0, 3) - 1.0) / 3.0 - G * dg * dg / 12.0);
        CHECK(weighted_norm_dq(f, p, q) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK_THROWS_AS(weighted_norm_dq(f, p, 0.5), ConfigError);
}

TEST_CASE("d_1 of a point mass is the weight at its cell") {
    const ModelParams p;
    const Grid grid = build_grid(p, 16, 16);
    DensityField f(grid);
    f(3, 2) = 1.0 / grid.cell_area();
    const double g = grid.g_center(2);
    CHECK(weighted_norm_dq(f, p, 1.0) == doctest::Approx((g + p.g_L) * (g + p.g_L)).epsilon(1e-14));
}

TEST_CASE("ladder exponents and roots") {
    const ModelParams p;
    const DensityField s = steady_on(32, p);
    const auto ladder = dq_ladder(s, p, 4.0 / 3.0, 8);
    REQUIRE(ladder.size() == 9);
    for (const LadderEntry& e : ladder) {
        CHECK(e.q == doctest::Approx(std::pow(4.0 / 3.0, static_cast<double>(e.k))).epsilon(1e-15));
        CHECK(e.d_q == doctest::Approx(weighted_norm_dq(s, p, e.q)).epsilon(1e-15));
        CHECK(e.root == doctest::Approx(std::pow(e.d_q, 1.0 / e.q)).epsilon(1e-15));
    }
}

TEST_CASE("relative entropies of a restricted steady state") {
    const ModelParams p;
    const DensityField s = steady_on(16, p);
    const Grid& grid = s.grid();
    double m_s = 0.0;
    for (std::size_t j = 0; j < grid.n_g() / 2; ++j)
        for (std::size_t i = 0; i < grid.n_v(); ++i) m_s += s(i, j) * grid.cell_area();
    DensityField f(grid);
    for (std::size_t j = 0; j < grid.n_g() / 2; ++j)
        for (std::size_t i = 0; i < grid.n_v(); ++i) f(i, j) = s(i, j) / m_s;
    CHECK(relative_entropy(f, s, Entropy::SquaredDeviation) == doctest::Approx((1.0 - m_s) / m_s).epsilon(1e-12));
    CHECK(relative_entropy(f, s, Entropy::Square) == doctest::Approx(1.0 / m_s).epsilon(1e-12));
    CHECK(relative_entropy(f, s, Entropy::HLogH) == doctest::Approx(-std::log(m_s)).epsilon(1e-12));
    for (Entropy h : {Entropy::SquaredDeviation, Entropy::HLogH}) CHECK(std::abs(relative_entropy(s, s, h)) <= 1e-14);
    CHECK(relative_entropy(s, s, Entropy::Square) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("entropy is invariant under a common permutation of cells") {
    const ModelParams p;
    const DensityField s = steady_on(16, p);
    const Grid& grid = s.grid();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    DensityField f(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) f[k] = u(rng) * s[k];
    std::vector<std::size_t> perm(grid.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DensityField fp(grid), sp(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        fp[k] = f[perm[k]];
        sp[k] = s[perm[k]];
    }
    for (Entropy h : all_entropies)
        CHECK(relative_entropy(fp, sp, h) == doctest::Approx(relative_entropy(f, s, h)).epsilon(1e-12));
}

TEST_CASE("square entropy grows with pointwise dominance") {
    const ModelParams p;
    const DensityField s = steady_on(16, p);
    DensityField lo = s, hi = s;
    for (std::size_t k = 0; k < s.size(); ++k) {
        lo[k] *= 0.5;
        hi[k] *= (k % 3 == 0) ? 1.5 : 0.5;
    }
    CHECK(relative_entropy(lo, s, Entropy::Square) < relative_entropy(hi, s, Entropy::Square));
}

TEST_CASE("reference density must be positive") {
    const ModelParams p;
    const Grid grid = build_grid(p, 8, 8);
    const DensityField f(grid, 1.0);
    DensityField ref(grid, 1.0);
    ref(2, 2) = 0.0;
    CHECK_THROWS_AS(relative_entropy(f, ref, Entropy::Square), StructuralError);
    CHECK_THROWS_AS(Diagnostics(ref, p), StructuralError);
}

TEST_CASE("envelope constants") {
    const ModelParams p;
    const DensityField s = steady_on(16, p);
    DensityField f = s;
    for (std::size_t k = 0; k < s.size(); ++k) f[k] *= 0.25 + static_cast<double>(k % 7) * 0.5;
    const Envelope e = envelope_constants(f, s);
    CHECK(e.lower == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(e.upper == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("flatness in g of h = g is the weighted standard deviation of g") {
    const ModelParams p;
    const Grid grid = build_grid(p, 8, 32);
    const DensityField ref = product_state(grid, p);
    DensityField f(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) f[k] = grid.g_center(grid.cell_of(k).second) * ref[k];
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        const double mj = maxwellian(p, grid.g_center(j));
        const double g = grid.g_center(j);
        w += mj;
        m1 += g * mj;
        m2 += g * g * mj;
    }
    const double variance = m2 / w - (m1 / w) * (m1 / w);
    CHECK(flatness_in_g(f, ref) == doctest::Approx(std::sqrt(variance)).epsilon(1e-12));
    CHECK(flatness_in_g(ref, ref) <= 1e-15);
}

TEST_CASE("g-dissipation converges under refinement") {
    const ModelParams p;
    auto value = [&](std::size_t n) {
        const Grid grid = build_grid(p, 8, n);
        const DensityField ref = product_state(grid, p);
        DensityField f(grid);
        for (std::size_t k = 0; k < grid.size(); ++k)
            f[k] = (1.0 + 0.1 * std::sin(grid.g_center(grid.cell_of(k).second))) * ref[k];
        return dissipation_g(f, ref, Entropy::SquaredDeviation);
    };
    const double a = value(32), b = value(64), c = value(128), d = value(256);
    CHECK(a > 0.0);
    const double order = std::log2(std::abs(b - c) / std::abs(c - d));
    CHECK(order >= 1.0);
    CHECK(std::abs(c - d) < 0.5 * std::abs(a - b));
    CHECK(dissipation_g(product_state(build_grid(p, 8, 32), p), product_state(build_grid(p, 8, 32), p),
                        Entropy::HLogH) == 0.0);
}

TEST_CASE("estimate suite on the default steady state") {
    const ModelParams p;
    const DensityField s = steady_on(64, p);
    const EstimateSuite e = estimate_suite(s, p);
    CHECK(e.passed());
    CHECK(e.F2 <= e.K2 * e.K3);
    CHECK(e.flux_bound_slack == doctest::Approx(e.K2 * e.K3 - e.F2).epsilon(1e-15));
    REQUIRE(e.d_q.size() == 3);
    CHECK(e.d_q[0].first == 1.0);
    CHECK(e.d_q[2].first == doctest::Approx(4.0 / 3.0 - 0.01).epsilon(1e-15));
    // Regression values for the 64 x 64 default mesh.
    CHECK(e.K1 == doctest::Approx(1.5459).epsilon(1e-3));
    CHECK(e.K2 == doctest::Approx(0.6149).epsilon(1e-3));
    CHECK(e.K3 == doctest::Approx(4.5488).epsilon(1e-3));
    CHECK(e.F2 == doctest::Approx(0.5402).epsilon(1e-3));
}

TEST_CASE("F2 <= K2 K3 holds for arbitrary nonnegative fields") {
    const ModelParams p;
    const Grid grid = build_grid(p, 16, 16);
    std::mt19937_64 rng(13);
    std::exponential_distribution<double> u(1.0);
    for (int trial = 0; trial < 20; ++trial) {
        DensityField f(grid);
        for (std::size_t k = 0; k < grid.size(); ++k) f[k] = u(rng);
        const EstimateSuite e = estimate_suite(f, p);
        CHECK(e.flux_bound_holds);
    }
}

TEST_CASE("diagnostics report collects every field") {
    const ModelParams p;
    const DensityField s = steady_on(16, p);
    const Diagnostics diag(s, p);
    DensityField f = s;
    for (std::size_t k = 0; k < f.size(); ++k) f[k] *= (k % 2 == 0) ? 1.2 : 0.8;
    const DiagnosticsReport r = diag.report(7, 0.35, f);
    CHECK(r.step == 7);
    CHECK(r.time == 0.35);
    CHECK(r.mass == doctest::Approx(f.mass()).epsilon(1e-15));
    CHECK(r.entropy[1] == doctest::Approx(relative_entropy(f, s, Entropy::Square)).epsilon(1e-15));
    CHECK(r.weighted_l2_distance() == r.entropy[0]);
    CHECK(r.envelope.upper == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(r.envelope.lower == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(r.firing_flux == doctest::Approx(firing_flux(f, p)).epsilon(1e-15));
    CHECK(r.dissipation > 0.0);
}

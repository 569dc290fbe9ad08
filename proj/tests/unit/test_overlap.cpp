#include "latgate/errors.hpp"
#include "latgate/overlap.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

using namespace latgate;
using boost::math::quadrature::gauss_kronrod;

namespace {

// <g> in closed angular form: g(r) is the sin^2-weighted average of
// exp(i k.r) over photon directions, so the Gaussian average reduces to
// (3/4) int_{-1}^{1} (1 - u^2) exp(-(s_perp^2 (1 - u^2) + s_par^2 u^2) / 2) du.
double mean_g_oracle(double eta_perp, double eta_par) {
    const double sp2 = 2 * eta_perp * eta_perp;
    const double sz2 = 2 * eta_par * eta_par;
    auto fn = [&](double u) { return (1 - u * u) * std::exp(-0.5 * (sp2 * (1 - u * u) + sz2 * u * u)); };
    return 0.75 * gauss_kronrod<double, 31>::integrate(fn, -1.0, 1.0, 15, 1e-14);
}

// Isotropic trap: the P2 term averages out and <f> = <cos(kr)/kr>.
double mean_f_isotropic_oracle(double eta) {
    const double s = std::sqrt(2.0) * eta;
    const double norm = 4 * std::numbers::pi / std::pow(2 * std::numbers::pi * s * s, 1.5);
    auto fn = [&](double x) { return std::cos(x) * x * std::exp(-x * x / (2 * s * s)); };
    return norm * gauss_kronrod<double, 61>::integrate(fn, 0.0, 40 * s, 20, 1e-13);
}

}  // namespace

TEST_CASE("relative coordinate width is sqrt(2) eta") {
    const RelativeGaussian rg = relative_distribution(TrapGeometry(0.1, 0.2));
    CHECK(rg.sigma_perp == doctest::Approx(std::sqrt(2.0) * 0.1));
    CHECK(rg.sigma_par == doctest::Approx(std::sqrt(2.0) * 0.2));
    CHECK(rg.total_rms() == doctest::Approx(std::sqrt(2 * 0.02 + 0.08)));
}

TEST_CASE("<g> matches the closed angular form") {
    const double geoms[][2] = {{0.1, 0.2}, {0.1, 0.1}, {0.05, 0.3}, {0.3, 0.05}, {0.2, 0.1}, {0.25, 0.25}, {0.02, 0.5}};
    for (const auto& g : geoms) {
        CAPTURE(g[0]);
        CAPTURE(g[1]);
        const DipoleExpectation e = mean_fg(TrapGeometry(g[0], g[1]));
        CHECK(e.mean_g == doctest::Approx(mean_g_oracle(g[0], g[1])).epsilon(1e-7));
    }
}

TEST_CASE("isotropic <f> matches a 1D radial integral") {
    for (double eta : {0.03, 0.1, 0.2, 0.5}) {
        CAPTURE(eta);
        const DipoleExpectation e = mean_fg(TrapGeometry(eta, eta));
        CHECK(e.mean_f == doctest::Approx(mean_f_isotropic_oracle(eta)).epsilon(1e-6));
        CHECK(e.mean_g == doctest::Approx(std::exp(-eta * eta)).epsilon(1e-9));
    }
}

TEST_CASE("reference geometry") {
    const DipoleExpectation e = mean_fg(TrapGeometry(0.1, 0.2));
    // Independent Python prototype (scipy nested quadrature).
    CHECK(e.mean_f == doctest::Approx(38.3501).epsilon(1e-4));
    CHECK(e.mean_g == doctest::Approx(0.98415).epsilon(1e-4));
    CHECK(e.kappa() == doctest::Approx(-19.328).epsilon(1e-4));
    CHECK(e.err_f < 1e-4 * std::abs(e.mean_f));
    CHECK(e.evaluations > 0);
}

TEST_CASE("further prototype values") {
    CHECK(kappa(TrapGeometry(0.1, 0.1)) == doctest::Approx(-2.7787).epsilon(2e-4));
    CHECK(kappa(TrapGeometry(0.2, 0.1)) == doctest::Approx(8.9467).epsilon(2e-4));
    CHECK(kappa(TrapGeometry(0.05, 0.3)) == doctest::Approx(-85.475).epsilon(2e-4));
    CHECK(kappa(TrapGeometry(0.3, 0.05)) == doctest::Approx(20.995).epsilon(2e-4));
}

TEST_CASE("kappa from means") {
    CHECK(kappa_from_means(0.0, 0.5) == 0.0);
    CHECK(kappa_from_means(38.0, 1.0) == doctest::Approx(-19.0));
    CHECK(kappa_from_means(-4.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("closed form equals half the averaged near-field tensor term") {
    for (auto [a, b] : {std::pair{0.1, 0.2}, {0.05, 0.2}, {0.2, 0.1}, {0.1, 0.1}}) {
        const TrapGeometry g(a, b);
        const DipoleExpectation t = mean_fg(g, {}, KernelVariant::near_field_tensor);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(kappa_approx(g) == doctest::Approx(t.mean_f / 2).epsilon(1e-6).scale(1e-6));
    }
    CHECK(kappa_approx(0.1, 0.2) == doctest::Approx(16.9013).epsilon(1e-4));
    CHECK(kappa_approx_aligned(TrapGeometry(0.1, 0.2)) == doctest::Approx(-16.9013).epsilon(1e-4));
    CHECK(kappa_approx(0.1, 0.218) * 1e-3 == doctest::Approx(0.017024).epsilon(1e-3));
}

TEST_CASE("closed form is smooth through the isotropic point") {
    const double below = kappa_approx(0.1, 0.1 * (1 - 1e-7));
    const double at = kappa_approx(0.1, 0.1);
    const double above = kappa_approx(0.1, 0.1 * (1 + 1e-7));
    CHECK(std::abs(at) < 1e-6);
    CHECK(below < at);
    CHECK(at < above);
    // Branches on either side of the series window agree with the series.
    for (double r : {0.97, 0.974, 0.976, 1.024, 1.026, 1.03}) {
        const double h = 1e-6;
        const double mid = kappa_approx(0.1, 0.1 * r);
        const double lo = kappa_approx(0.1, 0.1 * r * (1 - h));
        const double hi = kappa_approx(0.1, 0.1 * r * (1 + h));
        CAPTURE(r);
        CHECK(std::abs(hi - 2 * mid + lo) < 1e-6 * std::abs(mid) + 1e-9);
    }
}

TEST_CASE("near-field estimates approach the full kernel as the trap shrinks") {
    // With the 1/kr term added, 10% agreement needs eta_perp <= 0.05.
    const TrapGeometry small(0.05, 0.1);
    const double nf = -mean_fg(small, {}, KernelVariant::near_field).mean_f / 2;
    CHECK(std::abs(nf - kappa_approx_aligned(small)) < 0.1 * std::abs(nf));
    // The full kernel at a 5x smaller trap, rescaled by eta^3, reproduces the
    // closed form at the reference point to 1%.
    const double scaled = kappa(TrapGeometry(0.02, 0.04)) * std::pow(0.2, 3);
    CHECK(scaled == doctest::Approx(kappa_approx_aligned(TrapGeometry(0.1, 0.2))).epsilon(0.01));
}

TEST_CASE("monopole-only variant drops the P2 terms") {
    const TrapGeometry iso(0.15, 0.15);
    const DipoleExpectation full = mean_fg(iso);
    const DipoleExpectation mono = mean_fg(iso, {}, KernelVariant::monopole_only);
    CHECK(mono.mean_f == doctest::Approx(full.mean_f).epsilon(1e-6));
    const TrapGeometry aniso(0.1, 0.2);
    CHECK(std::abs(mean_fg(aniso, {}, KernelVariant::monopole_only).mean_f - mean_fg(aniso).mean_f) > 1.0);
}

TEST_CASE("numerical settings do not move the answer") {
    const TrapGeometry g(0.1, 0.2);
    const DipoleExpectation base = mean_fg(g);
    QuadratureSpec fine;
    fine.angular_order = 128;
    fine.rel_tol = 1e-9;
    const DipoleExpectation f = mean_fg(g, fine);
    CHECK(f.mean_f == doctest::Approx(base.mean_f).epsilon(1e-8));
    CHECK(f.mean_g == doctest::Approx(base.mean_g).epsilon(1e-8));
    QuadratureSpec cut;
    cut.near_origin = NearOriginMode::integrate;
    CHECK(mean_fg(g, cut).mean_f == doctest::Approx(base.mean_f).epsilon(1e-6));
}

TEST_CASE("Monte Carlo oracle agrees within 3 standard errors") {
    for (auto [a, b] : {std::pair{0.1, 0.2}, {0.2, 0.1}, {0.07, 0.07}, {0.3, 0.15}}) {
        const TrapGeometry g(a, b);
        const DipoleExpectation q = mean_fg(g);
        const DipoleExpectation mc = mc_oracle(g, 200000, 99);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(std::abs(mc.mean_f - q.mean_f) < 3 * mc.err_f + 1e-6);
        CHECK(std::abs(mc.mean_g - q.mean_g) < 3 * mc.err_g + 1e-9);
    }
    CHECK_THROWS_AS(mc_oracle(TrapGeometry(0.1, 0.2), 10, 1), std::invalid_argument);
}

TEST_CASE("Monte Carlo is reproducible per seed") {
    const TrapGeometry g(0.1, 0.2);
    const DipoleExpectation a = mc_oracle(g, 20000, 5);
    const DipoleExpectation b = mc_oracle(g, 20000, 5);
    CHECK(a.mean_f == b.mean_f);
    CHECK(a.mean_g == b.mean_g);
    CHECK(mc_oracle(g, 20000, 6).mean_f != a.mean_f);
}

TEST_CASE("ratio optimum of the closed form") {
    for (double eta : {0.05, 0.1, 0.2}) {
        const RatioOptimum o = optimize_ratio(eta, true);
        CAPTURE(eta);
        CHECK(o.ratio == doctest::Approx(2.18).epsilon(0.02));
        CHECK(std::abs(o.kappa) * eta * eta * eta == doctest::Approx(0.017).epsilon(0.1));
        CHECK(o.kappa < 0.0);
    }
}

TEST_CASE("ratio optimum of the quadrature stays inside the geometry bounds") {
    const RatioOptimum o = optimize_ratio(0.2, false);
    CHECK(o.ratio * 0.2 <= 1.0 + 1e-12);
    CHECK(o.ratio > 1.0);
    CHECK(std::abs(o.kappa) >= std::abs(kappa(TrapGeometry(0.2, 0.4))) * (1 - 1e-6));
}

TEST_CASE("kappa map is independent of the worker count") {
    const auto perp = linear_grid(0.05, 0.25, 5);
    const auto par = linear_grid(0.05, 0.25, 4);
    const KappaMap one = kappa_map(perp, par, {}, 1);
    const KappaMap four = kappa_map(perp, par, {}, 4);
    std::ostringstream a, b;
    one.write_csv(a);
    four.write_csv(b);
    CHECK(a.str() == b.str());
    CHECK(one.at(1, 0) == kappa(TrapGeometry(perp[1], par[0])));
    const std::string head = a.str().substr(0, a.str().find('\n'));
    CHECK(head == "eta_perp\\eta_par,0.05,0.116666667,0.183333333,0.25");
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(TrapGeometry(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(TrapGeometry(0.1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(TrapGeometry(std::numeric_limits<double>::quiet_NaN(), 0.1), std::invalid_argument);
    QuadratureSpec bad;
    bad.rel_tol = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    QuadratureSpec starved;
    starved.max_evaluations = 1000;
    CHECK_THROWS_AS(mean_fg(TrapGeometry(0.1, 0.2), starved), NonConvergence);
    CHECK(format_sig9(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_sig9(-19.32826361) == "-19.3282636");
}

#include "latgate/golden_section.hpp"
#include "latgate/quadrature.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

using namespace latgate;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {8, 16, 64, 200}) {
        const auto rule = quad::gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        const int deg = 2 * n - 2;  // even, so the exact integral is 2/(deg+1)
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
        CHECK(s == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-12));
        for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
}

TEST_CASE("Kronrod-21 is exact for degree-31 polynomials on a panel") {
    auto fn = [](double x) { return std::array<double, 1>{std::pow(x, 31) + 2.0}; };
    const auto est = quad::kronrod21<1>(fn, 0.0, 1.0);
    CHECK(est.value[0] == doctest::Approx(1.0 / 32.0 + 2.0).epsilon(1e-14));
}

TEST_CASE("adaptive integration of a peaked vector integrand") {
    auto fn = [](double x) {
        return std::array<double, 2>{std::exp(-x * x / (2e-4)), std::sin(50 * x) * std::exp(-x)};
    };
    const std::array<double, 3> breaks{-1.0, 0.3, 4.0};
    const auto r = quad::integrate_adaptive<2>(fn, breaks, {1e-10, 1e-2, 100000});
    REQUIRE(r.converged);
    const double gauss = std::sqrt(2 * std::numbers::pi * 1e-4);  // tails beyond +-1 are negligible
    // int_{-1}^{4} sin(50x) e^{-x} dx in closed form
    auto prim = [](double x) { return -std::exp(-x) * (std::sin(50 * x) + 50 * std::cos(50 * x)) / 2501.0; };
    CHECK(r.value[0] == doctest::Approx(gauss).epsilon(1e-9));
    CHECK(r.value[1] == doctest::Approx(prim(4.0) - prim(-1.0)).epsilon(1e-8));
}

TEST_CASE("adaptive integration reports exhaustion") {
    auto fn = [](double x) { return std::array<double, 1>{std::sin(1.0 / x)}; };
    const std::array<double, 2> breaks{1e-6, 1.0};
    const auto r = quad::integrate_adaptive<1>(fn, breaks, {1e-12, 1e-2, 50});
    CHECK_FALSE(r.converged);
    CHECK(r.rule_applications <= 50);
}

TEST_CASE("golden section finds a parabola minimum") {
    const auto m = golden_section_minimize([](double x) { return (x - 2.18) * (x - 2.18) + 1.0; }, 1.0, 10.0, 1e-8);
    CHECK(m.x == doctest::Approx(2.18).epsilon(1e-7));
    CHECK(m.value == doctest::Approx(1.0));
    CHECK_THROWS(golden_section_minimize([](double x) { return x; }, 2.0, 1.0));
}

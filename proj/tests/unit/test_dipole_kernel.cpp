#include "latgate/dipole_kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace latgate;

namespace {

struct KernelOracle {
    double kr, mu, f, g;
};

// mpmath at 30 digits from the elementary forms of j_n, y_n.
constexpr KernelOracle kKernel[] = {
    {0.01, 0.0, -1499925.0056249479168, 0.99998000010714259259},
    {0.01, 0.3, -1094918.2554562007293, 0.99998090010071403902},
    {0.01, 1.0, 3000149.9962500208333, 0.99999000003571421958},
    {0.5, 0.0, -10.774796288638572447, 0.95066552390440929424},
    {0.5, 0.3, -7.3917067072853566194, 0.95287562329648840494},
    {0.5, 1.0, 26.81508794861938119, 0.97522218381639941316},
    {std::numbers::pi, 0.0, -0.42908752762588677353, -0.15198177546350665716},
    {std::numbers::pi, 0.3, -0.39917756443652082599, -0.11094669608835985973},
    {std::numbers::pi, 1.0, -0.096754603299598467553, 0.30396355092701331433},
    {10.0, 0.0, -0.11644180540451264196, -0.093373207903218204074},
    {10.0, 0.3, -0.10765744923035844484, -0.082851011763362273936},
    {10.0, 1.0, -0.018837847913910451759, 0.023540082539625464128},
};

}  // namespace

TEST_CASE("f and g match high-precision values") {
    for (const auto& o : kKernel) {
        CAPTURE(o.kr);
        CAPTURE(o.mu);
        const DipoleFunctions d = fg(RelativePosition(o.kr, o.mu));
        CHECK(d.f == doctest::Approx(o.f).epsilon(1e-10));
        CHECK(d.g == doctest::Approx(o.g).epsilon(1e-10));
    }
}

TEST_CASE("at the magic angle only the monopole survives") {
    // P2(1/sqrt 3) = 0, so f = -y0(pi) = -1/pi and g = j0(pi) = 0.
    const DipoleFunctions d = fg(RelativePosition(std::numbers::pi, 1.0 / std::sqrt(3.0)));
    CHECK(d.f == doctest::Approx(-1.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(std::abs(d.g) < 1e-12);
}

TEST_CASE("near-field asymptote 3 P2 / (kr)^3") {
    for (double kr : {1e-4, 1e-3, 1e-2}) {
        for (double mu : {0.0, 0.5, 1.0}) {
            const RelativePosition pos(kr, mu);
            const DipoleFunctions exact = fg(pos);
            const DipoleFunctions asym = fg_smallkr_asymptote(pos);
            const double p2 = 1.5 * mu * mu - 0.5;
            CHECK(asym.f == doctest::Approx(3 * p2 / (kr * kr * kr)).epsilon(1e-14));
            // Leading correction is O(1/kr) against O(1/kr^3).
            CHECK(std::abs(exact.f - asym.f) <= 2.0 / kr);
            CHECK(exact.g == doctest::Approx(1.0).epsilon(kr * kr));
        }
    }
    CHECK_THROWS_AS(fg_smallkr_asymptote(RelativePosition(0.06, 0.0)), std::domain_error);
}

TEST_CASE("head-to-tail pairs attract, side-by-side pairs repel in the near field") {
    CHECK(fg(RelativePosition(0.05, 1.0)).f > 0.0);
    CHECK(fg(RelativePosition(0.05, 0.0)).f < 0.0);
}

TEST_CASE("complex Hankel form equals f + i g") {
    for (double kr : {0.02, 0.09, 0.11, 0.7, 2.5, 13.0, 140.0}) {
        for (double mu : {-1.0, -0.2, 0.4, 0.9}) {
            const RelativePosition pos(kr, mu);
            const auto h = hankel_expression(pos);
            const DipoleFunctions d = fg(pos);
            CAPTURE(kr);
            CAPTURE(mu);
            CHECK(h.real() == doctest::Approx(d.f).epsilon(1e-9).scale(1e-9));
            CHECK(h.imag() == doctest::Approx(d.g).epsilon(1e-9).scale(1e-9));
        }
    }
}

TEST_CASE("multipoles reassemble f and g") {
    const KernelMultipoles m = radial_multipoles(1.3);
    const DipoleFunctions d = fg(RelativePosition(1.3, 0.6));
    const double p2 = 1.5 * 0.36 - 0.5;
    CHECK(d.f == doctest::Approx(m.f_mono + p2 * m.f_quad).epsilon(1e-14));
    CHECK(d.g == doctest::Approx(m.g_mono + p2 * m.g_quad).epsilon(1e-14));
}

TEST_CASE("far field decays as 1/kr") {
    const double kr = 1e4;
    const DipoleFunctions d = fg(RelativePosition(kr, 0.0));
    CHECK(std::abs(d.f) * kr < 1.6);
    CHECK(std::abs(d.g) * kr < 1.6);
}

TEST_CASE("invalid positions") {
    CHECK_THROWS_AS(RelativePosition(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(RelativePosition(-1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(RelativePosition(1.0, 1.5), std::domain_error);
}

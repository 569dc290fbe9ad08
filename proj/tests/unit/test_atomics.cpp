#include "latgate/atomics.hpp"
#include "latgate/constants.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace latgate;

namespace {
HalfInteger hi(double v) { return HalfInteger::from_double(v); }
}  // namespace

TEST_CASE("exact Clebsch-Gordan coefficients against sympy") {
    struct Row {
        double f, m, fp;
        int q;
        std::int64_t num, den;
        int sign;
    };
    const Row rows[] = {
        {4, 1, 5, 0, 8, 15, +1},  {4, 4, 5, 1, 1, 1, +1},     {4, 0, 5, 0, 5, 9, +1},
        {3, -2, 4, 1, 3, 28, +1}, {4, 1, 4, 0, 1, 20, +1},    {4, 1, 3, -1, 5, 18, +1},
        {0.5, 0.5, 1.5, 0, 2, 3, +1}, {1, 1, 1, -1, 1, 2, +1}, {2, -1, 1, 0, 3, 10, -1},
    };
    for (const auto& r : rows) {
        CAPTURE(r.f);
        CAPTURE(r.m);
        CAPTURE(r.q);
        CAPTURE(r.fp);
        const ExactCoefficient c = clebsch_gordan_exact(hi(r.f), hi(r.m), r.q, hi(r.fp));
        CHECK(c.sign == r.sign);
        CHECK(c.numerator * r.den == r.num * c.denominator);
        CHECK(c.value() == doctest::Approx(r.sign * std::sqrt(double(r.num) / double(r.den))).epsilon(1e-15));
    }
}

TEST_CASE("selection rules give exact zeros") {
    CHECK(clebsch_gordan_exact(hi(1.5), hi(0.5), 1, hi(0.5)).sign == 0);  // |m'| > f'
    CHECK(clebsch_gordan_exact(hi(1), hi(0), 0, hi(1)).sign == 0);      // parity of <1 0; 1 0|1 0>
    CHECK(clebsch_gordan(0, 0, 0, 0) == 0.0);                           // 0 -> 0 forbidden
}

TEST_CASE("cesium catalysis coefficient is sqrt(8/15)") {
    const AtomSpecies cs = cesium_d2();
    CHECK(cs.f_up == hi(4));
    CHECK(cs.f_down == hi(3));
    CHECK(cs.f_max_excited == hi(5));
    CHECK(catalysis_clebsch_gordan(cs) == doctest::Approx(0.7302967433402214).epsilon(1e-15));
    CHECK(std::pow(catalysis_clebsch_gordan(cs), 4) == doctest::Approx(64.0 / 225.0).epsilon(1e-14));
}

TEST_CASE("orthonormality of coupled states") {
    // sum_{m,q} <f m; 1 q | F M>^2 = 1 for each allowed F, M.
    for (double f : {0.5, 1.0, 3.0, 4.0}) {
        for (double F = std::abs(f - 1); F <= f + 1; F += 1.0) {
            for (double M = -F; M <= F; M += 1.0) {
                double sum = 0.0;
                for (int q = -1; q <= 1; ++q) {
                    const double m = M - q;
                    if (std::abs(m) > f) continue;
                    sum += clebsch_gordan_exact(hi(f), hi(m), q, hi(F)).squared();
                }
                CAPTURE(f);
                CAPTURE(F);
                CAPTURE(M);
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("invalid angular momenta are rejected") {
    CHECK_THROWS_AS(HalfInteger::from_double(0.3), std::invalid_argument);
    CHECK_THROWS_AS(AngularMomentumKet(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(AngularMomentumKet(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(AngularMomentumKet(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(clebsch_gordan_exact(hi(1), hi(0), 2, hi(1)), std::invalid_argument);
    CHECK_THROWS_AS(clebsch_gordan_exact(hi(1), hi(0), 0, hi(3)), std::invalid_argument);
}

TEST_CASE("cesium constants") {
    const AtomSpecies cs = cesium_d2();
    CHECK(cs.gamma_natural / constants::two_pi == doctest::Approx(5.2227e6));
    CHECK(cs.lambda_res == doctest::Approx(852.34727582e-9));
    CHECK(cs.k_res() == doctest::Approx(constants::two_pi / 852.34727582e-9));
    CHECK(cs.omega_res() == doctest::Approx(constants::two_pi * constants::c / 852.34727582e-9));
}

TEST_CASE("species file round-trips the built-in record") {
    const AtomSpecies file = load_species(LATGATE_DATA_DIR "/species/cs_d2.txt");
    const AtomSpecies cs = cesium_d2();
    CHECK(file.mass == doctest::Approx(cs.mass).epsilon(1e-12));
    CHECK(file.lambda_res == doctest::Approx(cs.lambda_res).epsilon(1e-12));
    CHECK(file.gamma_natural == doctest::Approx(cs.gamma_natural).epsilon(1e-12));
    CHECK(file.i_sat == doctest::Approx(cs.i_sat).epsilon(1e-12));
    CHECK(file.f_max_excited == cs.f_max_excited);
}

TEST_CASE("make_species rejects unphysical constants") {
    CHECK_THROWS_AS(make_species("x", -1.0, 1e-6, 1e7, 10.0, hi(1.5)), std::invalid_argument);
    CHECK_THROWS_AS(make_species("x", 1e-25, 1e-6, 1e7, 10.0, hi(0)), std::invalid_argument);
}

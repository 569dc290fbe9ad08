#include "latgate/atomics.hpp"

#include "latgate/constants.hpp"
#include "latgate/keyvalue.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <utility>

namespace latgate {

namespace mp = boost::multiprecision;

HalfInteger HalfInteger::from_double(double value) {
    const double twice = 2.0 * value;
    const double rounded = std::round(twice);
    if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9 || std::abs(rounded) > 1e6) {
        throw std::invalid_argument("not a half-integer: " + std::to_string(value));
    }
    return HalfInteger(static_cast<int>(rounded));
}

AngularMomentumKet::AngularMomentumKet(HalfInteger f_, HalfInteger m_f_) : f(f_), m_f(m_f_) {
    if (f.twice() < 0) throw std::invalid_argument("angular momentum must be non-negative");
    if (std::abs(m_f.twice()) > f.twice()) throw std::invalid_argument("|m_f| exceeds f");
    if ((f.twice() - m_f.twice()) % 2 != 0) throw std::invalid_argument("f and m_f parity mismatch");
}

AngularMomentumKet::AngularMomentumKet(double f_, double m_f_)
    : AngularMomentumKet(HalfInteger::from_double(f_), HalfInteger::from_double(m_f_)) {}

double AtomSpecies::k_res() const { return constants::two_pi / lambda_res; }

double AtomSpecies::omega_res() const { return constants::two_pi * constants::c / lambda_res; }

void AtomSpecies::validate() const {
    if (!(mass > 0.0 && lambda_res > 0.0 && gamma_natural > 0.0 && i_sat > 0.0)) {
        throw std::invalid_argument("species '" + name + "': physical constants must be positive");
    }
    if (nuclear_spin.twice() <= 0 || nuclear_spin.is_integer()) {
        throw std::invalid_argument("species '" + name + "': nuclear spin must be a positive half-integer");
    }
    if ((f_up - f_down).twice() != 2 || (f_max_excited - f_up).twice() != 2) {
        throw std::invalid_argument("species '" + name + "': inconsistent hyperfine labels");
    }
}

AtomSpecies make_species(std::string name, double mass, double lambda_res, double gamma_natural,
                         double i_sat, HalfInteger nuclear_spin) {
    const HalfInteger half = HalfInteger::from_twice(1);
    AtomSpecies s;
    s.name = std::move(name);
    s.mass = mass;
    s.lambda_res = lambda_res;
    s.gamma_natural = gamma_natural;
    s.i_sat = i_sat;
    s.nuclear_spin = nuclear_spin;
    s.f_up = nuclear_spin + half;
    s.f_down = nuclear_spin - half;
    s.f_max_excited = nuclear_spin + HalfInteger::from_twice(3);
    s.validate();
    return s;
}

AtomSpecies cesium_d2() {
    // Gamma = 2 pi x 5.2227 MHz; I_sat = 1.1049 mW/cm^2 (cycling transition).
    return make_species("Cs", 2.20694650e-25, 852.34727582e-9, constants::two_pi * 5.2227e6,
                        11.049, HalfInteger::from_twice(7));
}

AtomSpecies species_from_keyvalues(const KeyValueFile& file) {
    return make_species(file.raw("name"), file.quantity("mass", Dimension::mass),
                        file.quantity("lambda_res", Dimension::length),
                        file.quantity("gamma_natural", Dimension::angular_frequency),
                        file.quantity("i_sat", Dimension::intensity),
                        HalfInteger::from_double(file.quantity("nuclear_spin", Dimension::dimensionless)));
}

AtomSpecies load_species(const std::filesystem::path& path) {
    return species_from_keyvalues(KeyValueFile::load(path));
}

double ExactCoefficient::value() const { return sign * std::sqrt(squared()); }

namespace {

mp::cpp_int factorial(int n) {
    mp::cpp_int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

// Racah's closed form. Every factorial argument is an integer once the
// selection rules hold, so the sum and prefactor are exact rationals.
ExactCoefficient clebsch_gordan_exact(HalfInteger f, HalfInteger m_f, int q, HalfInteger f_prime) {
    if (q < -1 || q > 1) throw std::invalid_argument("polarization index q must be -1, 0 or +1");
    if (f.twice() < 0 || f_prime.twice() < 0) throw std::invalid_argument("angular momentum must be non-negative");
    if (std::abs(f.twice() - f_prime.twice()) > 2) throw std::invalid_argument("|f - f'| must not exceed 1");
    if ((f.twice() - m_f.twice()) % 2 != 0 || (f.twice() - f_prime.twice()) % 2 != 0) {
        throw std::invalid_argument("inconsistent half-integer inputs");
    }

    const int j1 = f.twice(), m1 = m_f.twice();
    const int j2 = 2, m2 = 2 * q;
    const int j = f_prime.twice(), m = m1 + m2;
    if (std::abs(m1) > j1 || std::abs(m) > j) return {};
    if (j < std::abs(j1 - j2) || j > j1 + j2) return {};

    // Work with ordinary integers: a = (twice quantities) / 2.
    const int a_j1_j2_mj = (j1 + j2 - j) / 2;
    const int a_j1_m1 = (j1 - m1) / 2;
    const int a_j2_m2 = (j2 + m2) / 2;
    const int a_j_j2_m1 = (j - j2 + m1) / 2;
    const int a_j_j1_m2 = (j - j1 - m2) / 2;

    mp::cpp_rational sum = 0;
    for (int k = 0;; ++k) {
        const int args[] = {k, a_j1_j2_mj - k, a_j1_m1 - k, a_j2_m2 - k, a_j_j2_m1 + k, a_j_j1_m2 + k};
        if (args[1] < 0 || args[2] < 0 || args[3] < 0) break;
        if (args[4] < 0 || args[5] < 0) continue;
        mp::cpp_int denom = 1;
        for (int v : args) denom *= factorial(v);
        const mp::cpp_rational term(mp::cpp_int(1), denom);
        sum += (k % 2 == 0) ? term : mp::cpp_rational(-term);
    }
    if (sum == 0) return {};

    mp::cpp_rational prefactor(mp::cpp_int(j + 1) * factorial((j + j1 - j2) / 2) * factorial((j - j1 + j2) / 2) *
                                   factorial((j1 + j2 - j) / 2),
                               factorial((j1 + j2 + j) / 2 + 1));
    prefactor *= mp::cpp_rational(factorial((j + m) / 2) * factorial((j - m) / 2) * factorial((j1 - m1) / 2) *
                                  factorial((j1 + m1) / 2) * factorial((j2 - m2) / 2) * factorial((j2 + m2) / 2));

    const mp::cpp_rational square = sum * sum * prefactor;
    const mp::cpp_int num = mp::numerator(square);
    const mp::cpp_int den = mp::denominator(square);
    const mp::cpp_int limit = std::numeric_limits<std::int64_t>::max();
    if (num > limit || den > limit) throw std::overflow_error("Clebsch-Gordan rational exceeds 64 bits");
    return {sum > 0 ? 1 : -1, num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()};
}

double clebsch_gordan(double f, double m_f, int q, double f_prime) {
    if (f < 0.0 || f_prime < 0.0) throw std::invalid_argument("angular momentum must be non-negative");
    return clebsch_gordan_exact(HalfInteger::from_double(f), HalfInteger::from_double(m_f), q,
                                HalfInteger::from_double(f_prime))
        .value();
}

double catalysis_clebsch_gordan(const AtomSpecies& species) {
    const HalfInteger one = HalfInteger::from_twice(2);
    return clebsch_gordan_exact(species.f_up, one, 0, species.f_max_excited).value();
}

}  // namespace latgate

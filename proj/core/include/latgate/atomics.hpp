#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace latgate {

class KeyValueFile;

/// Angular-momentum quantum number stored as twice its value, so that
/// half-integers are exact.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
    /// Throws std::invalid_argument unless 2*value is an integer.
    static HalfInteger from_double(double value);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ + b.twice_); }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ - b.twice_); }

private:
    constexpr explicit HalfInteger(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// |F, M_F>. Throws std::invalid_argument if f < 0, |m_f| > f, or f and m_f
/// are not both integer or both half-odd.
struct AngularMomentumKet {
    AngularMomentumKet(HalfInteger f, HalfInteger m_f);
    AngularMomentumKet(double f, double m_f);

    HalfInteger f;
    HalfInteger m_f;
};

/// Alkali species constants in SI units.
struct AtomSpecies {
    std::string name;
    double mass = 0.0;           // kg
    double lambda_res = 0.0;     // m, D2 line
    double gamma_natural = 0.0;  // rad/s
    double i_sat = 0.0;          // W/m^2
    HalfInteger nuclear_spin;
    HalfInteger f_up;
    HalfInteger f_down;
    HalfInteger f_max_excited;

    double k_res() const;                  // 2 pi / lambda_res
    double omega_res() const;              // 2 pi c / lambda_res
    /// Throws std::invalid_argument if an invariant is broken.
    void validate() const;
};

/// Builds a species from its mass, wavelength, linewidth, saturation intensity
/// and nuclear spin; the hyperfine labels follow from I.
AtomSpecies make_species(std::string name, double mass, double lambda_res, double gamma_natural,
                         double i_sat, HalfInteger nuclear_spin);

/// Cesium D2 line (6S_1/2 -> 6P_3/2). Linewidth and saturation intensity are
/// the standard tabulated values (D. A. Steck, "Cesium D Line Data", rev. 2.2.1).
AtomSpecies cesium_d2();

/// Species from a key-value file: name, mass, lambda_res, gamma_natural,
/// i_sat, nuclear_spin (SI values, optional unit suffixes).
AtomSpecies species_from_keyvalues(const KeyValueFile& file);
AtomSpecies load_species(const std::filesystem::path& path);

/// Clebsch-Gordan coefficient as an exact signed square root of a rational:
/// value = sign * sqrt(numerator / denominator).
struct ExactCoefficient {
    int sign = 0;
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    double value() const;
    double squared() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// <f, m_f; 1, q | f', m_f + q> (Condon-Shortley phase), exact.
/// Zero when a selection rule fails. Throws std::invalid_argument for
/// negative or non-half-integer inputs, |q| > 1, or |f - f'| > 1.
ExactCoefficient clebsch_gordan_exact(HalfInteger f, HalfInteger m_f, int q, HalfInteger f_prime);

double clebsch_gordan(double f, double m_f, int q, double f_prime);

/// Coefficient of the pi-polarized catalysis transition
/// |F_up, M_F = 1> -> |F'_max, M_F = 1>. Its fourth power scales the
/// dipole-dipole matrix element.
double catalysis_clebsch_gordan(const AtomSpecies& species);

}  // namespace latgate

#include "latgate/lattice.hpp"

#include "latgate/constants.hpp"
#include "latgate/golden_section.hpp"
#include "latgate/keyvalue.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace latgate {

using constants::hbar;
using constants::pi;

double well_separation(double theta, double k_lattice) {
    if (!(theta >= 0.0 && theta <= pi)) throw std::domain_error("well_separation: theta must lie in [0, pi]");
    if (!(k_lattice > 0.0)) throw std::domain_error("well_separation: k_L must be positive");
    // atan2 follows the branch of atan(tan(theta)/2) unwrapped by pi at theta = pi/2.
    return std::atan2(std::sin(theta), 2.0 * std::cos(theta)) / k_lattice;
}

double well_separation_slope(double theta, double k_lattice) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return 2.0 / (4.0 * c * c + s * s) / k_lattice;
}

double saturation(const AtomSpecies& species, double intensity, double detuning) {
    const double ratio = 2.0 * detuning / species.gamma_natural;
    return (intensity / species.i_sat) / (1.0 + ratio * ratio);
}

TrapParams trap_params(const AtomSpecies& species, double intensity, double detuning, double k_lattice,
                       double geometry_factor) {
    if (!(detuning > 0.0)) throw std::invalid_argument("trap_params: detuning must be blue (positive)");
    if (!(intensity >= 0.0)) throw std::invalid_argument("trap_params: intensity must be non-negative");
    if (!(k_lattice > 0.0) || !(geometry_factor > 0.0)) {
        throw std::invalid_argument("trap_params: k_L and geometry factor must be positive");
    }
    if (saturation(species, intensity, detuning) > 0.1) {
        throw std::invalid_argument("trap_params: saturation above 0.1 violates the far-detuned model");
    }
    TrapParams p;
    p.intensity = intensity;
    p.detuning = detuning;
    p.k_lattice = k_lattice;
    if (intensity == 0.0) {
        p.ground_rms = std::numeric_limits<double>::infinity();
        p.lamb_dicke = std::numeric_limits<double>::infinity();
        return p;
    }
    const double gamma = species.gamma_natural;
    const double single_beam = hbar * gamma * gamma * (intensity / species.i_sat) / (8.0 * detuning);
    p.well_depth = 4.0 * single_beam * geometry_factor;
    p.omega = k_lattice * std::sqrt(2.0 * p.well_depth / species.mass);
    p.osc_freq = p.omega / constants::two_pi;
    p.ground_rms = std::sqrt(hbar / (2.0 * species.mass * p.omega));
    p.lamb_dicke = k_lattice * p.ground_rms;
    p.scatter_rate = (gamma / detuning) * (p.omega / 4.0);
    return p;
}

double total_lattice_scatter(std::span<const TrapParams> axes) {
    return std::accumulate(axes.begin(), axes.end(), 0.0,
                           [](double sum, const TrapParams& p) { return sum + p.scatter_rate; });
}

MergeSchedule merge_schedule(double theta_start, double theta_end, double duration, double nu_osc,
                             double ground_rms, double k_lattice, std::size_t samples) {
    if (!(duration > 0.0)) throw std::invalid_argument("merge_schedule: duration must be positive");
    if (!(nu_osc > 0.0) || !(ground_rms > 0.0)) {
        throw std::invalid_argument("merge_schedule: oscillation frequency and width must be positive");
    }
    if (samples < 2) throw std::invalid_argument("merge_schedule: need at least two samples");
    const double sweep = theta_end - theta_start;
    auto theta_at = [&](double t) { return theta_start + sweep * 0.5 * (1.0 - std::cos(pi * t / duration)); };
    auto speed_at = [&](double t) {
        const double dtheta_dt = sweep * 0.5 * (pi / duration) * std::sin(pi * t / duration);
        return std::abs(well_separation_slope(theta_at(t), k_lattice) * dtheta_dt);
    };

    MergeSchedule out;
    out.samples.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = duration * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double theta = theta_at(t);
        out.samples.push_back({t, theta, well_separation(theta, k_lattice)});
    }

    // Peak speed: dense scan, then golden refinement around the best grid point.
    constexpr std::size_t scan = 4096;
    std::size_t best = 0;
    double best_speed = -1.0;
    for (std::size_t i = 0; i <= scan; ++i) {
        const double v = speed_at(duration * static_cast<double>(i) / scan);
        if (v > best_speed) {
            best_speed = v;
            best = i;
        }
    }
    const double lo = duration * static_cast<double>(best == 0 ? 0 : best - 1) / scan;
    const double hi = duration * static_cast<double>(std::min(best + 1, scan)) / scan;
    if (best_speed > 0.0 && hi > lo) {
        const LineMinimum m = golden_section_minimize([&](double t) { return -speed_at(t); }, lo, hi, 1e-10);
        best_speed = std::max(best_speed, -m.value);
    }
    out.max_speed = std::max(best_speed, 0.0);
    out.adiabaticity = out.max_speed / (nu_osc * ground_rms);
    out.adiabatic = out.adiabaticity < kAdiabaticThreshold;
    return out;
}

CatalysisField catalysis_intensity(const AtomSpecies& species, double c_g4, double mean_f, double mean_g,
                                   double target_vdd) {
    if (mean_f == 0.0) throw std::invalid_argument("catalysis_intensity: <f> = 0 admits no level shift");
    if (!(target_vdd >= 0.0)) throw std::invalid_argument("catalysis_intensity: target |V_dd| must be non-negative");
    if (!(c_g4 > 0.0)) throw std::invalid_argument("catalysis_intensity: c_g^4 must be positive");
    CatalysisField out;
    out.scatter_rate = target_vdd / (hbar * c_g4 * std::abs(mean_f));
    out.saturation = 2.0 * out.scatter_rate / species.gamma_natural;
    out.intensity = out.saturation * species.i_sat;
    out.superradiant_linewidth = out.scatter_rate * c_g4 * (1.0 + mean_g);
    out.v_dd = -hbar * out.scatter_rate * c_g4 * mean_f;
    // c_g^4 and Gamma' cancel in the ratio.
    out.kappa = out.superradiant_linewidth > 0.0 ? out.v_dd / (hbar * out.superradiant_linewidth)
                                                 : -mean_f / (1.0 + mean_g);
    return out;
}

double superradiant_linewidth(double v_dd_abs, double kappa) {
    if (kappa == 0.0) throw std::invalid_argument("superradiant_linewidth: kappa must be nonzero");
    return v_dd_abs / (hbar * std::abs(kappa));
}

void LatticeBeamConfig::validate() const {
    if (!(detuning_perp > 0.0 && detuning_par > 0.0)) throw std::invalid_argument("lattice: detunings must be blue");
    if (!(intensity_perp >= 0.0 && intensity_par >= 0.0)) throw std::invalid_argument("lattice: negative intensity");
    if (!(k_perp > 0.0 && k_par > 0.0)) throw std::invalid_argument("lattice: wave numbers must be positive");
    if (!(polarization_angle >= 0.0 && polarization_angle <= pi)) {
        throw std::invalid_argument("lattice: polarization angle must lie in [0, pi]");
    }
}

BudgetInputs budget_inputs_from_keyvalues(const KeyValueFile& file) {
    BudgetInputs in;
    const std::string species = file.find_raw("species").value_or("cs_d2");
    if (species == "cs_d2") {
        in.species = cesium_d2();
        in.species_source = "builtin:cs_d2";
    } else {
        std::filesystem::path path(species);
        if (path.is_relative()) path = std::filesystem::path(file.source()).parent_path() / path;
        in.species = load_species(path);
        in.species_source = path.string();
    }
    LatticeBeamConfig& b = in.beams;
    b.intensity_perp = file.quantity("intensity_perp", Dimension::intensity);
    b.intensity_par = file.quantity("intensity_par", Dimension::intensity);
    b.detuning_perp = file.quantity("detuning_perp", Dimension::angular_frequency);
    b.detuning_par = file.quantity("detuning_par", Dimension::angular_frequency);
    const double omega_res = in.species.omega_res();
    b.k_perp = file.quantity_or("k_perp", Dimension::dimensionless, (omega_res + b.detuning_perp) / constants::c);
    b.k_par = file.quantity_or("k_par", Dimension::dimensionless, (omega_res + b.detuning_par) / constants::c);
    b.polarization_angle = file.quantity_or("polarization_angle", Dimension::angle, 0.0);
    b.geometry_factor_perp = file.quantity_or("geometry_factor_perp", Dimension::dimensionless, 1.0);
    b.geometry_factor_par = file.quantity_or("geometry_factor_par", Dimension::dimensionless, 1.0);
    b.validate();
    in.catalysis_vdd = file.quantity_or("catalysis_vdd", Dimension::energy_frequency, 0.0);
    in.overlap_eta_perp = file.quantity_or("overlap_eta_perp", Dimension::dimensionless, 0.0);
    in.overlap_eta_par = file.quantity_or("overlap_eta_par", Dimension::dimensionless, 0.0);
    return in;
}

}  // namespace latgate

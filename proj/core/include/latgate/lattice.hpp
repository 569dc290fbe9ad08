#pragma once

#include "latgate/atomics.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace latgate {

class KeyValueFile;

/// Distance between sigma+ and sigma- well minima for polarization angle
/// theta: k_L dZ = atan(tan(theta)/2), on the branch continuous in theta
/// (0 at theta = 0, pi/2 at theta = pi/2, pi at theta = pi).
/// Throws std::domain_error outside [0, pi].
double well_separation(double theta, double k_lattice);

/// d(dZ)/d(theta).
double well_separation_slope(double theta, double k_lattice);

/// Harmonic description of one lattice axis.
struct TrapParams {
    double intensity = 0.0;   ///< W/m^2 per beam
    double detuning = 0.0;    ///< rad/s, blue
    double k_lattice = 0.0;   ///< rad/m
    double well_depth = 0.0;  ///< J
    double omega = 0.0;       ///< rad/s
    double osc_freq = 0.0;    ///< Hz, omega / 2 pi
    double ground_rms = 0.0;  ///< m, +inf without a trap
    double lamb_dicke = 0.0;  ///< k_L * ground_rms
    double scatter_rate = 0.0;///< 1/s, node-sited residual scattering

    bool trapped() const { return omega > 0.0; }
};

/// Far-off-resonance two-level model of a blue standing wave:
/// U1 = hbar Gamma^2 (I/I_sat) / (8 Delta), U0 = 4 U1 * geometry_factor,
/// omega = k_L sqrt(2 U0 / m), x0 = sqrt(hbar / (2 m omega)),
/// scatter = (Gamma / Delta) (omega / 4).
/// Zero intensity yields an untrapped record (zeros, infinite width).
/// Throws std::invalid_argument for red or zero detuning, negative intensity,
/// or off-resonant saturation above 0.1.
TrapParams trap_params(const AtomSpecies& species, double intensity, double detuning, double k_lattice,
                       double geometry_factor = 1.0);

/// Off-resonant saturation parameter (I/I_sat) / (1 + 4 Delta^2 / Gamma^2).
double saturation(const AtomSpecies& species, double intensity, double detuning);

/// Sum of per-axis node-sited scattering rates (1/s).
double total_lattice_scatter(std::span<const TrapParams> axes);

struct MergeSample {
    double time;
    double theta;
    double separation;
};

struct MergeSchedule {
    std::vector<MergeSample> samples;
    double max_speed = 0.0;       ///< m/s, max |d dZ / dt|
    double adiabaticity = 0.0;    ///< max_speed / (nu_osc * ground_rms)
    bool adiabatic = true;        ///< adiabaticity < kAdiabaticThreshold
};

inline constexpr double kAdiabaticThreshold = 0.1;

/// Raised-cosine polarization ramp theta(t) = theta0 + (theta1 - theta0)(1 - cos(pi t / T)) / 2.
/// The peak well speed is found on a dense grid refined by golden section.
MergeSchedule merge_schedule(double theta_start, double theta_end, double duration, double nu_osc,
                             double ground_rms, double k_lattice, std::size_t samples = 201);

/// Weak resonant catalysis field.
struct CatalysisField {
    double intensity = 0.0;              ///< W/m^2
    double detuning_from_resonance = 0.0;///< rad/s
    double saturation = 0.0;             ///< s = 2 Gamma' / Gamma
    double scatter_rate = 0.0;           ///< single-atom Gamma' (1/s)
    double superradiant_linewidth = 0.0; ///< Gamma' c_g^4 (1 + <g>) (1/s)
    double v_dd = 0.0;                   ///< signed level shift, J
    double kappa = 0.0;                  ///< v_dd / (hbar * superradiant_linewidth)
};

/// Solve |V_dd| = hbar Gamma' c_g^4 |<f>| for the single-atom Gamma' of a
/// resonant catalysis beam, then s = 2 Gamma'/Gamma and I = s I_sat.
/// Throws std::invalid_argument if mean_f == 0 or target_vdd < 0.
CatalysisField catalysis_intensity(const AtomSpecies& species, double c_g4, double mean_f, double mean_g,
                                   double target_vdd);

/// Gamma'_sup = |V_dd| / (hbar |kappa|).
double superradiant_linewidth(double v_dd_abs, double kappa);

/// A lattice configuration with its derived parameter budget.
struct LatticeBeamConfig {
    double intensity_perp = 0.0;
    double intensity_par = 0.0;
    double detuning_perp = 0.0;
    double detuning_par = 0.0;
    double k_perp = 0.0;
    double k_par = 0.0;
    double polarization_angle = 0.0;
    double geometry_factor_perp = 1.0;
    double geometry_factor_par = 1.0;

    /// Throws std::invalid_argument for red detunings, negative intensities or theta outside [0, pi].
    void validate() const;
};

struct BudgetInputs {
    AtomSpecies species;
    std::string species_source;
    LatticeBeamConfig beams;
    double catalysis_vdd = 0.0;        ///< target |V_dd| (J)
    double overlap_eta_perp = 0.0;     ///< geometry for the catalysis solution; 0 = use the trap's
    double overlap_eta_par = 0.0;
};

/// Reads a lattice configuration: species (file path relative to the config
/// or the built-in name "cs_d2"), intensity_perp, intensity_par,
/// detuning_perp, detuning_par, optional k_perp/k_par (default: the laser
/// wave number omega_res + Delta over c), polarization_angle,
/// geometry_factor_perp/par, catalysis_vdd, overlap_eta_perp/par.
BudgetInputs budget_inputs_from_keyvalues(const KeyValueFile& file);

}  // namespace latgate

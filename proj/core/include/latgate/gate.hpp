#pragma once

#include <array>
#include <complex>
#include <string>

namespace latgate {

/// Two-qubit logical basis |c>_- (x) |t>_+, indexed 2*c + t: 00, 01, 10, 11.
/// |1>_+- = |F_up, M_F = +-1> and |0>_+- = |F_down, M_F = -+1>, both in the
/// vibrational ground state. The sigma- atom is the control.
inline constexpr int kBasisSize = 4;
inline constexpr int basis_index(int control, int target) { return 2 * control + target; }
inline constexpr int control_bit(int index) { return index / 2; }
inline constexpr int target_bit(int index) { return index % 2; }
std::string basis_label(int index);
/// Parses "00", "01", "10", "11"; throws std::invalid_argument otherwise.
int parse_basis_label(const std::string& label);
/// C-NOT image: target flips iff control is 1.
inline constexpr int cnot_image(int index) { return control_bit(index) == 1 ? index ^ 1 : index; }

/// Decay rates are population rates (1/s); amplitudes decay at half of them.
struct GateEnvironment {
    double v_dd = 0.0;          ///< level shift of |11>, J
    double gamma_dd = 0.0;      ///< cooperative addition to the |11> decay
    double gamma_single = 0.0;  ///< c_g^4 Gamma', per atom in |1> when both are in |1>
    double gamma_lone = 0.0;    ///< per atom in |1> when the partner is in |0>

    /// Throws std::invalid_argument for negative or non-finite rates.
    void validate() const;
    /// Total population decay rate of a basis state.
    double decay_rate(int index) const;
};

/// <1+,1-| H_dd |1+,1-> = -hbar Gamma' c_g^4 <f + i g>: v_dd = -hbar Gamma' c_g^4 <f>,
/// gamma_dd = Gamma' c_g^4 <g>, gamma_single = gamma_lone = Gamma' c_g^4.
/// Throws std::invalid_argument if gamma_prime < 0 or an input is not finite.
GateEnvironment dd_matrix_element(double gamma_prime, double c_g, double mean_f, double mean_g);

/// Diagonal of H_dd in the logical basis (J): only the |11> entry,
/// v_dd - i hbar gamma_dd / 2, is nonzero.
std::array<std::complex<double>, kBasisSize> dd_hamiltonian_diagonal(const GateEnvironment& env);

enum class DetuningReference {
    shifted_line,  ///< detuning measured from the dipole-shifted |10> <-> |11> line
    bare_line,     ///< detuning measured from the unshifted |00> <-> |01> line
};

struct PulseSpec {
    double rabi = 0.0;      ///< two-photon Rabi frequency Omega (rad/s); H = hbar Omega/2 sigma_x
    double detuning = 0.0;  ///< rad/s, laser minus transition frequency
    double duration = 0.0;  ///< s
    DetuningReference reference = DetuningReference::shifted_line;

    /// Throws std::invalid_argument unless rabi > 0 and duration > 0.
    void validate() const;
};

/// Pulse of area pi resonant with the shifted line.
PulseSpec resonant_pi_pulse(double rabi);

struct TwoQubitState {
    std::array<std::complex<double>, kBasisSize> amplitude{};
    double leaked = 0.0;

    static TwoQubitState basis(int index);
    double population(int index) const { return std::norm(amplitude[static_cast<std::size_t>(index)]); }
    /// Sum of populations plus leaked.
    double total() const;
};

/// Each control sector evolves as a driven two-level system on the target
/// with non-Hermitian damping from env. Lost norm accumulates in leaked.
/// Throws std::invalid_argument if the input total differs from 1 by more than 1e-9.
TwoQubitState evolve_pulse(const TwoQubitState& state, const PulseSpec& pulse, const GateEnvironment& env);

struct TruthTable {
    /// populations[input][output]
    std::array<std::array<double, kBasisSize>, kBasisSize> populations{};
    std::array<double, kBasisSize> leaked{};

    double row_fidelity(int input) const;
    double mean_fidelity() const;
};

TruthTable truth_table(const GateEnvironment& env, const PulseSpec& pulse);

/// Logical-1 (F_up) population of each atom, as read by fluorescence.
struct ReadoutPopulations {
    double control_one;
    double target_one;
};

ReadoutPopulations readout_projection(const TwoQubitState& state);

/// Gate environment and pi pulse for a catalysis scattering rate and
/// overlap: Omega = |v_dd| / (rabi_divisor * hbar), resonant with the shifted line.
struct OperatingPoint {
    GateEnvironment env;
    PulseSpec pulse;
};

OperatingPoint make_operating_point(double gamma_prime, double c_g, double mean_f, double mean_g,
                                    double rabi_divisor = 10.0);

}  // namespace latgate

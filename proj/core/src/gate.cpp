#include "latgate/gate.hpp"

#include "latgate/constants.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace latgate {

using constants::hbar;
using Complex = std::complex<double>;

std::string basis_label(int index) {
    if (index < 0 || index >= kBasisSize) throw std::out_of_range("basis index out of range");
    return std::string{static_cast<char>('0' + control_bit(index)), static_cast<char>('0' + target_bit(index))};
}

int parse_basis_label(const std::string& label) {
    for (int i = 0; i < kBasisSize; ++i) {
        if (basis_label(i) == label) return i;
    }
    throw std::invalid_argument("basis label must be one of 00, 01, 10, 11; got '" + label + "'");
}

void GateEnvironment::validate() const {
    const double rates[] = {gamma_dd, gamma_single, gamma_lone};
    for (double r : rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("GateEnvironment: rates must be non-negative");
    }
    if (!std::isfinite(v_dd)) throw std::invalid_argument("GateEnvironment: v_dd must be finite");
}

double GateEnvironment::decay_rate(int index) const {
    const int ones = control_bit(index) + target_bit(index);
    if (ones == 2) return 2.0 * gamma_single + gamma_dd;
    return ones * gamma_lone;
}

GateEnvironment dd_matrix_element(double gamma_prime, double c_g, double mean_f, double mean_g) {
    if (!(gamma_prime >= 0.0)) throw std::invalid_argument("dd_matrix_element: Gamma' must be non-negative");
    if (!std::isfinite(gamma_prime) || !std::isfinite(c_g) || !std::isfinite(mean_f) || !std::isfinite(mean_g)) {
        throw std::invalid_argument("dd_matrix_element: inputs must be finite");
    }
    const double c_g4 = c_g * c_g * c_g * c_g;
    GateEnvironment env;
    env.v_dd = -hbar * gamma_prime * c_g4 * mean_f;
    env.gamma_dd = gamma_prime * c_g4 * mean_g;
    env.gamma_single = gamma_prime * c_g4;
    env.gamma_lone = env.gamma_single;
    env.validate();
    return env;
}

std::array<Complex, kBasisSize> dd_hamiltonian_diagonal(const GateEnvironment& env) {
    std::array<Complex, kBasisSize> diag{};
    diag[basis_index(1, 1)] = Complex(env.v_dd, -0.5 * hbar * env.gamma_dd);
    return diag;
}

void PulseSpec::validate() const {
    if (!(rabi > 0.0) || !std::isfinite(rabi)) throw std::invalid_argument("PulseSpec: Rabi frequency must be positive");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw std::invalid_argument("PulseSpec: duration must be positive");
    if (!std::isfinite(detuning)) throw std::invalid_argument("PulseSpec: detuning must be finite");
}

PulseSpec resonant_pi_pulse(double rabi) {
    PulseSpec p{rabi, 0.0, constants::pi / rabi, DetuningReference::shifted_line};
    p.validate();
    return p;
}

TwoQubitState TwoQubitState::basis(int index) {
    TwoQubitState s;
    s.amplitude.at(static_cast<std::size_t>(index)) = 1.0;
    return s;
}

double TwoQubitState::total() const {
    double sum = leaked;
    for (const Complex& a : amplitude) sum += std::norm(a);
    return sum;
}

namespace {

// exp(-i H t) for the 2x2 sector Hamiltonian (hbar = 1)
//   H = [[-i ga/2,  Omega/2], [Omega/2, -delta - i gb/2]]
// in the target basis {|0>, |1>}.
std::array<Complex, 4> sector_propagator(double rabi, double delta, double ga, double gb, double t) {
    constexpr Complex i(0.0, 1.0);
    const Complex a(0.0, -0.5 * ga);
    const Complex d(-delta, -0.5 * gb);
    const Complex b(0.5 * rabi, 0.0);
    const Complex mean = 0.5 * (a + d);
    const Complex half_split = 0.5 * (a - d);
    const Complex lambda = std::sqrt(half_split * half_split + b * b);
    const Complex phase = std::exp(-i * mean * t);
    const Complex lt = lambda * t;
    const Complex cos_lt = std::cos(lt);
    const Complex sinc_t = std::abs(lt) < 1e-8 ? Complex(t) * (1.0 - lt * lt / 6.0) : std::sin(lt) / lambda;
    // U = phase [cos(lt) I - i sinc_t (H - mean I)]
    return {phase * (cos_lt - i * sinc_t * half_split), phase * (-i * sinc_t * b), phase * (-i * sinc_t * b),
            phase * (cos_lt + i * sinc_t * half_split)};
}

}  // namespace

TwoQubitState evolve_pulse(const TwoQubitState& state, const PulseSpec& pulse, const GateEnvironment& env) {
    pulse.validate();
    env.validate();
    if (std::abs(state.total() - 1.0) > 1e-9) throw std::invalid_argument("evolve_pulse: input state is not normalized");

    const double shift = env.v_dd / hbar;
    const bool from_shifted = pulse.reference == DetuningReference::shifted_line;
    const double delta_control1 = from_shifted ? pulse.detuning : pulse.detuning - shift;
    const double delta_control0 = from_shifted ? pulse.detuning + shift : pulse.detuning;

    TwoQubitState out;
    for (int control = 0; control < 2; ++control) {
        const double delta = control == 1 ? delta_control1 : delta_control0;
        const int i0 = basis_index(control, 0);
        const int i1 = basis_index(control, 1);
        const auto u = sector_propagator(pulse.rabi, delta, env.decay_rate(i0), env.decay_rate(i1), pulse.duration);
        const Complex c0 = state.amplitude[static_cast<std::size_t>(i0)];
        const Complex c1 = state.amplitude[static_cast<std::size_t>(i1)];
        out.amplitude[static_cast<std::size_t>(i0)] = u[0] * c0 + u[1] * c1;
        out.amplitude[static_cast<std::size_t>(i1)] = u[2] * c0 + u[3] * c1;
    }
    double kept = 0.0;
    for (const Complex& a : out.amplitude) kept += std::norm(a);
    double before = 0.0;
    for (const Complex& a : state.amplitude) before += std::norm(a);
    // Without decay the propagator is unitary; report exactly zero loss then.
    const bool lossless = env.decay_rate(basis_index(0, 1)) == 0.0 && env.decay_rate(basis_index(1, 1)) == 0.0 &&
                          env.decay_rate(basis_index(1, 0)) == 0.0;
    out.leaked = state.leaked + (lossless ? 0.0 : std::max(0.0, before - kept));
    return out;
}

double TruthTable::row_fidelity(int input) const {
    return populations.at(static_cast<std::size_t>(input)).at(static_cast<std::size_t>(cnot_image(input)));
}

double TruthTable::mean_fidelity() const {
    double sum = 0.0;
    for (int i = 0; i < kBasisSize; ++i) sum += row_fidelity(i);
    return sum / kBasisSize;
}

TruthTable truth_table(const GateEnvironment& env, const PulseSpec& pulse) {
    TruthTable table;
    for (int input = 0; input < kBasisSize; ++input) {
        const TwoQubitState out = evolve_pulse(TwoQubitState::basis(input), pulse, env);
        for (int o = 0; o < kBasisSize; ++o) {
            table.populations[static_cast<std::size_t>(input)][static_cast<std::size_t>(o)] = out.population(o);
        }
        table.leaked[static_cast<std::size_t>(input)] = out.leaked;
    }
    return table;
}

ReadoutPopulations readout_projection(const TwoQubitState& state) {
    ReadoutPopulations r{0.0, 0.0};
    for (int i = 0; i < kBasisSize; ++i) {
        const double p = state.population(i);
        r.control_one += control_bit(i) * p;
        r.target_one += target_bit(i) * p;
    }
    return r;
}

OperatingPoint make_operating_point(double gamma_prime, double c_g, double mean_f, double mean_g,
                                    double rabi_divisor) {
    if (!(rabi_divisor > 0.0)) throw std::invalid_argument("make_operating_point: Rabi divisor must be positive");
    OperatingPoint op;
    op.env = dd_matrix_element(gamma_prime, c_g, mean_f, mean_g);
    const double shift = std::abs(op.env.v_dd) / hbar;
    if (!(shift > 0.0)) throw std::invalid_argument("make_operating_point: zero level shift");
    op.pulse = resonant_pi_pulse(shift / rabi_divisor);
    return op;
}

}  // namespace latgate

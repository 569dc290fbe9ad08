#pragma once

#include <complex>

namespace latgate {

/// Separation between two atoms in units of the catalysis wave number,
/// and the polar angle of the separation relative to the dipole (z) axis.
class RelativePosition {
public:
    /// Throws std::domain_error unless kr > 0 and |cos_theta| <= 1.
    RelativePosition(double kr, double cos_theta);

    double kr() const { return kr_; }
    double cos_theta() const { return cos_theta_; }

private:
    double kr_;
    double cos_theta_;
};

/// Real and imaginary parts of the induced-dipole pair interaction:
/// f drives the coherent level shift, g the cooperative decay.
struct DipoleFunctions {
    double f;
    double g;
};

/// Radial pieces of the kernel: f = f_mono + P2(cos theta) f_quad, and
/// likewise for g. The angular dependence is entirely in P2.
struct KernelMultipoles {
    double f_mono;
    double f_quad;
    double g_mono;
    double g_quad;
};

/// f + i g = i [h_0(kr) + P2(cos theta) h_2(kr)] with the outgoing Hankel
/// function h_n = j_n + i y_n, so f = -(y_0 + P2 y_2) and g = j_0 + P2 j_2.
/// Near field: f -> 3 P2 / (kr)^3 (attractive head-to-tail), g -> 1.
KernelMultipoles radial_multipoles(double kr);

DipoleFunctions fg(const RelativePosition& pos);

/// i [h_0 + P2 h_2] evaluated in complex arithmetic; equals f + i g.
std::complex<double> hankel_expression(const RelativePosition& pos);

/// Leading near-field pair (3 P2 / (kr)^3, 1). Only defined for kr < 0.05;
/// throws std::domain_error otherwise. Test oracle.
DipoleFunctions fg_smallkr_asymptote(const RelativePosition& pos);

inline constexpr double kSmallKrWindow = 0.05;

}  // namespace latgate

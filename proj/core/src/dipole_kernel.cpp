#include "latgate/dipole_kernel.hpp"

#include "latgate/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace latgate {

RelativePosition::RelativePosition(double kr, double cos_theta) : kr_(kr), cos_theta_(cos_theta) {
    if (!(kr > 0.0) || !std::isfinite(kr)) {
        throw std::domain_error("RelativePosition: kr must be positive, got " + std::to_string(kr));
    }
    if (!(std::abs(cos_theta) <= 1.0)) {
        throw std::domain_error("RelativePosition: |cos_theta| must not exceed 1");
    }
}

KernelMultipoles radial_multipoles(double kr) {
    const BesselPair b0 = spherical_bessel_pair(0, kr);
    const BesselPair b2 = spherical_bessel_pair(2, kr);
    return {-b0.y, -b2.y, b0.j, b2.j};
}

DipoleFunctions fg(const RelativePosition& pos) {
    const KernelMultipoles m = radial_multipoles(pos.kr());
    const double p2 = legendre_p2(pos.cos_theta());
    return {m.f_mono + p2 * m.f_quad, m.g_mono + p2 * m.g_quad};
}

std::complex<double> hankel_expression(const RelativePosition& pos) {
    constexpr std::complex<double> i(0.0, 1.0);
    const BesselPair b0 = spherical_bessel_pair(0, pos.kr());
    const BesselPair b2 = spherical_bessel_pair(2, pos.kr());
    const std::complex<double> h0(b0.j, b0.y);
    const std::complex<double> h2(b2.j, b2.y);
    return i * h0 + legendre_p2(pos.cos_theta()) * i * h2;
}

DipoleFunctions fg_smallkr_asymptote(const RelativePosition& pos) {
    if (!(pos.kr() < kSmallKrWindow)) {
        throw std::domain_error("fg_smallkr_asymptote: kr must be below 0.05");
    }
    const double kr3 = pos.kr() * pos.kr() * pos.kr();
    return {3.0 * legendre_p2(pos.cos_theta()) / kr3, 1.0};
}

}  // namespace latgate

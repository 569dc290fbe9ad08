#include "latgate/dipole_kernel.hpp"
#include "latgate/overlap.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace latgate {
namespace {

// Mean of P2(mu) under the density proportional to exp(c mu^2) on [0, 1].
// Closed forms (error function, Dawson asymptotics) replace the angular
// quadrature used by mean_fg, so the two routes share no angular code.
double conditional_p2(double c) {
    if (std::abs(c) <= 1.0) {
        // (3 <mu^2> - 1)/2 = sum c^k/k! 2k/((2k+1)(2k+3)) / sum c^k/(k!(2k+1))
        double term = 1.0;
        double den = 1.0;
        double num = 0.0;
        for (int k = 1; k < 40; ++k) {
            term *= c / k;
            den += term / (2.0 * k + 1.0);
            num += term * 2.0 * k / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
            if (std::abs(term) < 1e-18) break;
        }
        return num / den;
    }
    double mean_mu2 = 0.0;
    if (c < 0.0) {
        const double d = -c;
        const double i0 = std::sqrt(std::numbers::pi) * std::erf(std::sqrt(d)) / (2.0 * std::sqrt(d));
        mean_mu2 = (1.0 - std::exp(-d) / i0) / (2.0 * d);
    } else if (c <= 40.0) {
        double term = 1.0;
        double den = 1.0;
        double num = 1.0 / 3.0;
        for (int k = 1; k < 400; ++k) {
            term *= c / k;
            den += term / (2.0 * k + 1.0);
            num += term / (2.0 * k + 3.0);
            if (term < 1e-18 * den) break;
        }
        mean_mu2 = num / den;
    } else {
        // int_0^1 exp(c mu^2) = e^c / (2c) * S, S = sum (2k-1)!! / (2c)^k
        double s = 1.0;
        double term = 1.0;
        for (int k = 1; k < 200; ++k) {
            const double next = term * (2.0 * k - 1.0) / (2.0 * c);
            if (next > term) break;
            term = next;
            s += term;
            if (term < 1e-18 * s) break;
        }
        mean_mu2 = 1.0 / s - 1.0 / (2.0 * c);
    }
    return 0.5 * (3.0 * mean_mu2 - 1.0);
}

}  // namespace

DipoleExpectation mc_oracle(const TrapGeometry& geom, std::size_t samples, std::uint64_t seed) {
    if (samples < 10'000) throw std::invalid_argument("mc_oracle: at least 10^4 samples required");
    const RelativeGaussian rel = relative_distribution(geom);
    const double alpha = 1.0 / (2.0 * rel.sigma_perp * rel.sigma_perp);
    const double beta = 1.0 / (2.0 * rel.sigma_par * rel.sigma_par);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Welford accumulators.
    double mean_f = 0.0, m2_f = 0.0, mean_g = 0.0, m2_g = 0.0;
    for (std::size_t n = 1; n <= samples; ++n) {
        const double x = rel.sigma_perp * normal(rng);
        const double y = rel.sigma_perp * normal(rng);
        const double z = rel.sigma_par * normal(rng);
        const double r2 = x * x + y * y + z * z;
        const double r = std::sqrt(r2);
        const double p2 = conditional_p2(r2 * (alpha - beta));
        const KernelMultipoles m = radial_multipoles(r);
        const double f = m.f_mono + p2 * m.f_quad;
        const double g = m.g_mono + p2 * m.g_quad;

        const double inv_n = 1.0 / static_cast<double>(n);
        const double df = f - mean_f;
        mean_f += df * inv_n;
        m2_f += df * (f - mean_f);
        const double dg = g - mean_g;
        mean_g += dg * inv_n;
        m2_g += dg * (g - mean_g);
    }
    const double n = static_cast<double>(samples);
    DipoleExpectation out;
    out.mean_f = mean_f;
    out.mean_g = mean_g;
    out.err_f = std::sqrt(m2_f / (n - 1.0) / n);
    out.err_g = std::sqrt(m2_g / (n - 1.0) / n);
    out.evaluations = samples;
    return out;
}

}  // namespace latgate

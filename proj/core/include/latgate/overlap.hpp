#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace latgate {

/// Lamb-Dicke parameters of one well: eta_perp = k x0, eta_par = k z0.
class TrapGeometry {
public:
    /// Throws std::invalid_argument unless both lie in (0, 1].
    TrapGeometry(double eta_perp, double eta_par);

    double eta_perp() const { return eta_perp_; }
    double eta_par() const { return eta_par_; }
    double x0(double k) const { return eta_perp_ / k; }
    double z0(double k) const { return eta_par_ / k; }
    bool isotropic() const { return eta_perp_ == eta_par_; }

private:
    double eta_perp_;
    double eta_par_;
};

/// Density of the relative coordinate r = r1 - r2 of two identical
/// ground-state packets, in units where lengths are multiplied by k:
/// p(r) = normalization * exp(-(x^2 + y^2) / (2 sigma_perp^2) - z^2 / (2 sigma_par^2)).
struct RelativeGaussian {
    double sigma_perp;
    double sigma_par;
    double normalization;

    /// sqrt(<r^2>) of the relative coordinate.
    double total_rms() const;
};

RelativeGaussian relative_distribution(const TrapGeometry& geom);

/// Terms of the kernel kept during averaging.
enum class KernelVariant {
    full,               ///< f = -(y0 + P2 y2), g = j0 + P2 j2
    monopole_only,      ///< P2 replaced by 0
    near_field_tensor,  ///< f = 3 P2 / (kr)^3, g = 1
    near_field,         ///< f = 3 P2 / (kr)^3 + 1 / kr, g = 1
};

enum class NearOriginMode {
    taylor,     ///< below the cutoff, integrate a linear-plus-quadratic fit
    integrate,  ///< integrate down to the cutoff and drop the remainder
};

struct QuadratureSpec {
    int radial_order = 21;           ///< Gauss-Kronrod points per radial panel (fixed at 21)
    std::size_t max_subdivisions = 20000;
    int angular_order = 64;          ///< Gauss-Legendre nodes on mu in [0, 1]
    double rel_tol = 1e-6;
    std::size_t max_evaluations = 10'000'000;  ///< pointwise kernel evaluations
    NearOriginMode near_origin = NearOriginMode::taylor;

    /// Throws std::invalid_argument if tol is outside (0, 1e-2] or an order is below 8.
    void validate() const;
};

struct DipoleExpectation {
    double mean_f = 0.0;
    double mean_g = 0.0;
    double err_f = 0.0;
    double err_g = 0.0;
    std::size_t evaluations = 0;

    double kappa() const;
};

/// <f>, <g> over the relative Gaussian, by adaptive Gauss-Kronrod in kr
/// (outer) and Gauss-Legendre in cos(theta) (inner); azimuth integrated
/// analytically. Throws NonConvergence if the budget runs out.
DipoleExpectation mean_fg(const TrapGeometry& geom, const QuadratureSpec& quad = {},
                          KernelVariant variant = KernelVariant::full);

/// Monte Carlo estimate of <f>, <g>: separations are drawn from the relative
/// Gaussian and the angular dependence is averaged in closed form at each
/// sampled |r|. err_f, err_g are standard errors. samples >= 10^4.
DipoleExpectation mc_oracle(const TrapGeometry& geom, std::size_t samples, std::uint64_t seed);

/// kappa = -<f> / (1 + <g>).
double kappa_from_means(double mean_f, double mean_g);
double kappa(const TrapGeometry& geom, const QuadratureSpec& quad = {});

/// Closed-form retardation-free estimate, evaluated exactly as printed:
/// [-2 - 3 u^2 + 3 (u^3 + u) atan(1/u)] / (8 sqrt(pi) eta_perp^2 eta_par),
/// u = eta / eta_perp with eta^-2 = eta_par^-2 - eta_perp^-2, continued
/// analytically through eta_par = eta_perp. Equals <3 P2/(kr)^3> / 2, so it
/// carries the opposite sign to kappa = -<f>/(1+<g>).
double kappa_approx(double eta_perp, double eta_par);
double kappa_approx(const TrapGeometry& geom);
/// -kappa_approx: the closed form in the sign convention of kappa().
double kappa_approx_aligned(const TrapGeometry& geom);

struct RatioOptimum {
    double ratio;  ///< eta_par / eta_perp maximizing |kappa|
    double kappa;
};

/// Maximize |kappa| over eta_par/eta_perp in [1.01, 10] by golden section
/// (relative tolerance 1e-4). With use_approx the closed form is used and the
/// returned kappa is sign-aligned; otherwise the quadrature is used and the
/// upper end is clipped so that eta_par <= 1.
RatioOptimum optimize_ratio(double eta_perp, bool use_approx, const QuadratureSpec& quad = {});

/// kappa over a grid; kappa[i * eta_par.size() + j] at (eta_perp[i], eta_par[j]).
/// Non-converged cells hold NaN and converged[...] = 0.
struct KappaMap {
    std::vector<double> eta_perp;
    std::vector<double> eta_par;
    std::vector<double> kappa;
    std::vector<double> mean_g;
    std::vector<char> converged;

    double at(std::size_t i, std::size_t j) const { return kappa[i * eta_par.size() + j]; }
    /// Header row of eta_par values, first column eta_perp, 9 significant digits, NaN as "nan".
    void write_csv(std::ostream& out) const;
};

/// Grids must be ascending and inside the geometry invariants. jobs >= 1
/// worker threads; the result does not depend on jobs.
KappaMap kappa_map(std::span<const double> eta_perp_grid, std::span<const double> eta_par_grid,
                   const QuadratureSpec& quad = {}, unsigned jobs = 1);

/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

/// Format with 9 significant digits; NaN prints as "nan".
std::string format_sig9(double value);

}  // namespace latgate

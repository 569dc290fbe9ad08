#pragma once

namespace latgate {

struct BesselPair {
    double j;  ///< spherical Bessel j_n(x)
    double y;  ///< spherical Neumann y_n(x), y_0(x) = -cos(x)/x
};

/// Below this argument j_1 and j_2 come from their power series.
inline constexpr double kBesselSeriesCrossover = 1.0;

/// Spherical Bessel and Neumann functions of order n in {0, 1, 2}.
/// Throws std::domain_error for x <= 0 or unsupported order.
BesselPair spherical_bessel_pair(int n, double x);

/// Derivatives d/dx of (j_n, y_n) from the recurrence
/// f_n' = f_{n-1} - (n+1) f_n / x, with f_0' = -f_1.
BesselPair spherical_bessel_derivative(int n, double x);

/// P_2(mu) = (3 mu^2 - 1) / 2. Throws std::domain_error for |mu| > 1.
double legendre_p2(double mu);

}  // namespace latgate

#include "latgate/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace latgate {
namespace {

// j_n(x) = x^n / (2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
double bessel_j_series(int n, double x) {
    double double_factorial = 1.0;
    for (int i = 3; i <= 2 * n + 1; i += 2) double_factorial *= i;
    const double half_x2 = 0.5 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= -half_x2 / (k * (2.0 * n + 2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::pow(x, n) / double_factorial * sum;
}

}  // namespace

BesselPair spherical_bessel_pair(int n, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("spherical_bessel_pair: argument must be positive and finite, got " +
                                std::to_string(x));
    }
    const double s = std::sin(x);
    const double c = std::cos(x);
    switch (n) {
        case 0:
            return {s / x, -c / x};
        case 1: {
            const double j = x < kBesselSeriesCrossover ? bessel_j_series(1, x) : s / (x * x) - c / x;
            return {j, -c / (x * x) - s / x};
        }
        case 2: {
            const double inv = 1.0 / x;
            const double inv3 = inv * inv * inv;
            const double j = x < kBesselSeriesCrossover
                                 ? bessel_j_series(2, x)
                                 : (3.0 * inv3 - inv) * s - 3.0 * inv * inv * c;
            return {j, (-3.0 * inv3 + inv) * c - 3.0 * inv * inv * s};
        }
        default:
            throw std::domain_error("spherical_bessel_pair: order must be 0, 1 or 2, got " +
                                    std::to_string(n));
    }
}

BesselPair spherical_bessel_derivative(int n, double x) {
    if (n == 0) {
        const BesselPair one = spherical_bessel_pair(1, x);
        return {-one.j, -one.y};
    }
    const BesselPair lower = spherical_bessel_pair(n - 1, x);
    const BesselPair here = spherical_bessel_pair(n, x);
    const double k = (n + 1.0) / x;
    return {lower.j - k * here.j, lower.y - k * here.y};
}

double legendre_p2(double mu) {
    if (!(std::abs(mu) <= 1.0)) {
        throw std::domain_error("legendre_p2: |mu| must not exceed 1");
    }
    return 0.5 * (3.0 * mu * mu - 1.0);
}

}  // namespace latgate

#pragma once

#include <cmath>
#include <stdexcept>

namespace latgate {

struct LineMinimum {
    double x;
    double value;
    int evaluations;
};

/// Golden-section minimization of a unimodal function on [a, b]. Stops when
/// the bracket is narrower than rel_tol * |x|.
template <class F>
LineMinimum golden_section_minimize(F&& fn, double a, double b, double rel_tol = 1e-4, int max_iter = 200) {
    if (!(b > a)) throw std::invalid_argument("golden_section_minimize: empty bracket");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    int evaluations = 2;
    for (int i = 0; i < max_iter; ++i) {
        if (b - a <= rel_tol * 0.5 * (std::abs(a) + std::abs(b))) break;
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
        ++evaluations;
    }
    const double x = 0.5 * (a + b);
    return {x, fn(x), evaluations + 1};
}

}  // namespace latgate

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace latgate::quad {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Newton iteration on P_n; accurate to rounding for n up to several hundred.
GaussLegendreRule gauss_legendre(int order);

/// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
struct Kronrod21 {
    static constexpr std::array<double, 11> xgk = {
        0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
        0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
        0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
        0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
        0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
        0.000000000000000000000000000000000};
    static constexpr std::array<double, 11> wgk = {
        0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
        0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
        0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
        0.123491976262065851077600525040294, 0.134709217311473325928054001771707,
        0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
        0.149445554002916905664936468389821};
    // Gauss weights for the even-indexed Kronrod nodes 1, 3, 5, 7, 9.
    static constexpr std::array<double, 5> wg = {
        0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
        0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
        0.295524224714752870173892994651338};
};

template <std::size_t N>
struct IntervalEstimate {
    double a = 0.0;
    double b = 0.0;
    std::array<double, N> value{};
    std::array<double, N> error{};
    std::array<double, N> abs_value{};
};

/// Apply the 21-point Kronrod rule to a vector-valued integrand on [a, b].
template <std::size_t N, class F>
IntervalEstimate<N> kronrod21(F&& fn, double a, double b) {
    using K = Kronrod21;
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    IntervalEstimate<N> out;
    out.a = a;
    out.b = b;
    std::array<double, N> gauss{};
    const std::array<double, N> fc = fn(center);
    for (std::size_t c = 0; c < N; ++c) {
        out.value[c] = K::wgk[10] * fc[c];
        out.abs_value[c] = K::wgk[10] * std::abs(fc[c]);
    }
    for (std::size_t i = 0; i < 10; ++i) {
        const double dx = half * K::xgk[i];
        const std::array<double, N> lo = fn(center - dx);
        const std::array<double, N> hi = fn(center + dx);
        for (std::size_t c = 0; c < N; ++c) {
            out.value[c] += K::wgk[i] * (lo[c] + hi[c]);
            out.abs_value[c] += K::wgk[i] * (std::abs(lo[c]) + std::abs(hi[c]));
            if (i % 2 == 1) gauss[c] += K::wg[i / 2] * (lo[c] + hi[c]);
        }
    }
    for (std::size_t c = 0; c < N; ++c) {
        out.value[c] *= half;
        out.abs_value[c] *= std::abs(half);
        out.error[c] = std::abs(out.value[c] - half * gauss[c]);
    }
    return out;
}

template <std::size_t N>
struct AdaptiveResult {
    std::array<double, N> value{};
    std::array<double, N> error{};
    std::size_t intervals = 0;
    std::size_t rule_applications = 0;
    bool converged = false;
};

struct AdaptiveOptions {
    double rel_tol = 1e-8;
    /// Components whose integral nearly cancels are judged against this
    /// fraction of the integral of their absolute value.
    double cancellation_floor = 1e-2;
    std::size_t max_rule_applications = 100000;
};

/// Globally adaptive Gauss-Kronrod integration over consecutive panels
/// [breaks[0], breaks[1]], ... . Always bisects the interval with the
/// largest scaled error; stops when every component meets its tolerance or
/// the rule-application budget is spent (converged = false).
template <std::size_t N, class F>
AdaptiveResult<N> integrate_adaptive(F&& fn, std::span<const double> breaks, const AdaptiveOptions& opt) {
    using Interval = IntervalEstimate<N>;
    AdaptiveResult<N> result;
    std::vector<Interval> pool;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) pool.push_back(kronrod21<N>(fn, breaks[i], breaks[i + 1]));
    }
    result.rule_applications = pool.size();

    auto totals = [&](std::array<double, N>& value, std::array<double, N>& error, std::array<double, N>& absval) {
        value.fill(0.0);
        error.fill(0.0);
        absval.fill(0.0);
        for (const auto& iv : pool) {
            for (std::size_t c = 0; c < N; ++c) {
                value[c] += iv.value[c];
                error[c] += iv.error[c];
                absval[c] += iv.abs_value[c];
            }
        }
    };

    std::array<double, N> value{}, error{}, absval{};
    for (;;) {
        totals(value, error, absval);
        std::array<double, N> target{};
        bool done = true;
        for (std::size_t c = 0; c < N; ++c) {
            target[c] = opt.rel_tol * std::max(std::abs(value[c]), opt.cancellation_floor * absval[c]);
            if (error[c] > target[c]) done = false;
        }
        if (done) {
            result.converged = true;
            break;
        }
        if (result.rule_applications + 2 > opt.max_rule_applications || pool.empty()) break;

        // Worst interval by error relative to each component's target.
        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double score = 0.0;
            for (std::size_t c = 0; c < N; ++c) {
                const double t = target[c] > 0.0 ? target[c] : 1e-300;
                score = std::max(score, pool[i].error[c] / t);
            }
            if (score > worst_score) {
                worst_score = score;
                worst = i;
            }
        }
        const Interval parent = pool[worst];
        const double mid = 0.5 * (parent.a + parent.b);
        if (!(mid > parent.a && mid < parent.b)) break;  // interval at machine resolution
        pool[worst] = kronrod21<N>(fn, parent.a, mid);
        pool.push_back(kronrod21<N>(fn, mid, parent.b));
        result.rule_applications += 2;
    }
    result.value = value;
    result.error = error;
    result.intervals = pool.size();
    return result;
}

}  // namespace latgate::quad

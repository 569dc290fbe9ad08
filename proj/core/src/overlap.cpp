#include "latgate/overlap.hpp"

#include "latgate/dipole_kernel.hpp"
#include "latgate/errors.hpp"
#include "latgate/golden_section.hpp"
#include "latgate/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace latgate {

TrapGeometry::TrapGeometry(double eta_perp, double eta_par) : eta_perp_(eta_perp), eta_par_(eta_par) {
    if (!(eta_perp > 0.0 && eta_perp <= 1.0) || !(eta_par > 0.0 && eta_par <= 1.0)) {
        throw std::invalid_argument("TrapGeometry: Lamb-Dicke parameters must lie in (0, 1], got (" +
                                    std::to_string(eta_perp) + ", " + std::to_string(eta_par) + ")");
    }
}

double RelativeGaussian::total_rms() const {
    return std::sqrt(2.0 * sigma_perp * sigma_perp + sigma_par * sigma_par);
}

RelativeGaussian relative_distribution(const TrapGeometry& geom) {
    const double sp = std::numbers::sqrt2 * geom.eta_perp();
    const double sz = std::numbers::sqrt2 * geom.eta_par();
    const double norm = 1.0 / (std::pow(2.0 * std::numbers::pi, 1.5) * sp * sp * sz);
    return {sp, sz, norm};
}

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1e-2]");
    if (radial_order != 21) throw std::invalid_argument("QuadratureSpec: only the 21-point Kronrod radial rule is provided");
    if (angular_order < 8) throw std::invalid_argument("QuadratureSpec: angular order must be at least 8");
    if (max_subdivisions < 8 || max_evaluations < 1000) throw std::invalid_argument("QuadratureSpec: budget too small");
}

double DipoleExpectation::kappa() const { return kappa_from_means(mean_f, mean_g); }

double kappa_from_means(double mean_f, double mean_g) { return -mean_f / (1.0 + mean_g); }

namespace {

KernelMultipoles variant_multipoles(double x, KernelVariant variant) {
    switch (variant) {
        case KernelVariant::full:
            return radial_multipoles(x);
        case KernelVariant::monopole_only: {
            const KernelMultipoles m = radial_multipoles(x);
            return {m.f_mono, 0.0, m.g_mono, 0.0};
        }
        case KernelVariant::near_field_tensor:
            return {0.0, 3.0 / (x * x * x), 1.0, 0.0};
        case KernelVariant::near_field:
            return {1.0 / x, 3.0 / (x * x * x), 1.0, 0.0};
    }
    throw std::logic_error("unhandled kernel variant");
}

// Angular moments over mu in [-1, 1] of the relative Gaussian at radius x:
// a0 = int exp(...) dmu, a2 = int P2(mu) exp(...) dmu. The density in mu is
// exp(-alpha x^2) exp(c mu^2) with c = x^2 (alpha - beta). Once |c| is large the
// density is a narrow spike (at mu = 1 for c > 0, mu = 0 for c < 0) and a single
// rule misses it, so the range is split into panels doubling away from the spike.
class AngularMoments {
public:
    AngularMoments(const RelativeGaussian& rel, int order) : rule_(quad::gauss_legendre(order)) {
        alpha_ = 1.0 / (2.0 * rel.sigma_perp * rel.sigma_perp);
        beta_ = 1.0 / (2.0 * rel.sigma_par * rel.sigma_par);
    }

    struct Result {
        double a0;
        double a2;
        std::size_t nodes;
    };

    Result operator()(double x) const {
        const double x2 = x * x;
        const double base = -alpha_ * x2;
        const double c = x2 * (alpha_ - beta_);
        if (std::abs(c) <= kSingleRuleLimit) return single(base, c);

        const bool spike_at_one = c > 0.0;
        const double h = spike_at_one ? 1.0 / c : 1.0 / std::sqrt(-c);
        Result r{0.0, 0.0, 0};
        double lo = 0.0;
        double hi = h;
        while (lo < 1.0) {
            hi = std::min(hi, 1.0);
            // distance s from the spike; mu = 1 - s or mu = s
            const double decay = spike_at_one ? -c * lo * (2.0 - lo) : c * lo * lo;
            if (decay < -kNegligibleExponent) break;
            const double half = 0.5 * (hi - lo);
            const double mid = 0.5 * (hi + lo);
            for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
                const double s = mid + half * rule_.nodes[i];
                const double mu = spike_at_one ? 1.0 - s : s;
                const double e = std::exp(base + c * mu * mu);
                const double w = 2.0 * half * rule_.weights[i];
                r.a0 += w * e;
                r.a2 += w * 0.5 * (3.0 * mu * mu - 1.0) * e;
            }
            r.nodes += rule_.nodes.size();
            lo = hi;
            hi = 2.0 * hi;
        }
        return r;
    }

private:
    static constexpr double kSingleRuleLimit = 16.0;
    static constexpr double kNegligibleExponent = 45.0;

    Result single(double base, double c) const {
        double a0 = 0.0;
        double a2 = 0.0;
        for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
            // even integrand: [0, 1] with weight 2 * (w / 2)
            const double mu = 0.5 * (rule_.nodes[i] + 1.0);
            const double t = c * mu * mu;
            const double e = std::exp(base + t);
            a0 += rule_.weights[i] * e;
            // P2 integrates to zero, so subtract the mu-independent part first.
            const double shifted = std::abs(t) < 1.0 ? std::exp(base) * std::expm1(t) : e - std::exp(base);
            a2 += rule_.weights[i] * 0.5 * (3.0 * mu * mu - 1.0) * shifted;
        }
        return {a0, a2, rule_.nodes.size()};
    }

    quad::GaussLegendreRule rule_;
    double alpha_ = 0.0;
    double beta_ = 0.0;
};

}  // namespace

DipoleExpectation mean_fg(const TrapGeometry& geom, const QuadratureSpec& quad, KernelVariant variant) {
    quad.validate();
    const RelativeGaussian rel = relative_distribution(geom);
    const AngularMoments moments(rel, quad.angular_order);
    const double radial_weight = 2.0 * std::numbers::pi * rel.normalization;
    std::size_t kernel_evaluations = 0;

    auto integrand = [&](double x) -> std::array<double, 2> {
        const auto [a0, a2, nodes] = moments(x);
        kernel_evaluations += nodes;
        const KernelMultipoles m = variant_multipoles(x, variant);
        const double w = radial_weight * x * x;
        return {w * (m.f_mono * a0 + m.f_quad * a2), w * (m.g_mono * a0 + m.g_quad * a2)};
    };

    const double eta_min = std::min(geom.eta_perp(), geom.eta_par());
    const double s_min = std::min(rel.sigma_perp, rel.sigma_par);
    const double s_max = std::max(rel.sigma_perp, rel.sigma_par);
    const double cutoff = 1e-4 * eta_min;
    const double upper = 12.0 * s_max;
    std::vector<double> breaks = {cutoff, 0.1 * eta_min, s_min, s_max, 3.0 * s_max, 10.0, upper};
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return b < cutoff || b > upper; }),
                 breaks.end());

    const std::size_t per_rule = 21 * static_cast<std::size_t>(quad.angular_order);
    quad::AdaptiveOptions options;
    options.rel_tol = quad.rel_tol;
    options.max_rule_applications = std::min(quad.max_subdivisions, quad.max_evaluations / per_rule);
    const quad::AdaptiveResult<2> body = quad::integrate_adaptive<2>(integrand, breaks, options);

    DipoleExpectation out;
    out.mean_f = body.value[0];
    out.mean_g = body.value[1];
    out.err_f = body.error[0];
    out.err_g = body.error[1];

    if (quad.near_origin == NearOriginMode::taylor) {
        // integrand ~ p x + q x^2 on [0, cutoff]
        const auto at_c = integrand(cutoff);
        const auto at_half = integrand(0.5 * cutoff);
        for (std::size_t c = 0; c < 2; ++c) {
            const double q = 2.0 * (at_c[c] - 2.0 * at_half[c]) / (cutoff * cutoff);
            const double p = at_c[c] / cutoff - q * cutoff;
            const double piece = 0.5 * p * cutoff * cutoff + q * cutoff * cutoff * cutoff / 3.0;
            (c == 0 ? out.mean_f : out.mean_g) += piece;
            (c == 0 ? out.err_f : out.err_g) += std::abs(piece) * 1e-2;
        }
    } else {
        const auto at_c = integrand(cutoff);
        out.err_f += std::abs(at_c[0]) * cutoff;
        out.err_g += std::abs(at_c[1]) * cutoff;
    }

    // Gaussian tail beyond 12 sigma: p(r) r^2 decays like exp(-72), kernel is O(1) there.
    const double tail = 4.0 * std::numbers::pi * rel.normalization * upper * s_max * s_max * std::exp(-72.0);
    out.err_f += tail;
    out.err_g += tail;

    out.evaluations = kernel_evaluations;
    if (!body.converged || out.evaluations > quad.max_evaluations) {
        throw NonConvergence("mean_fg: tolerance " + std::to_string(quad.rel_tol) + " not reached at eta = (" +
                             std::to_string(geom.eta_perp()) + ", " + std::to_string(geom.eta_par()) + ") after " +
                             std::to_string(out.evaluations) + " kernel evaluations");
    }
    return out;
}

double kappa(const TrapGeometry& geom, const QuadratureSpec& quad) { return mean_fg(geom, quad).kappa(); }

namespace {

// Bracket of the closed form as a function of w = 1 - (eta_perp/eta_par)^2,
// analytic through w = 0 (isotropy).
double closed_form_bracket(double w) {
    if (std::abs(w) < 0.05) {
        double sum = 0.0;
        double wk = w;
        for (int k = 1; k < 40; ++k) {
            const double term = 6.0 * wk / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            wk *= w;
        }
        return sum;
    }
    if (w < 0.0) {
        // eta_par < eta_perp: u = eta/eta_perp is real.
        const double u = 1.0 / std::sqrt(-w);
        return -2.0 - 3.0 * u * u + 3.0 * (u * u * u + u) * std::atan(1.0 / u);
    }
    // eta_par > eta_perp: u = i v, (u^3 + u) atan(1/u) = v (1 - v^2) atanh(1/v).
    const double v = 1.0 / std::sqrt(w);
    return -2.0 + 3.0 * v * v + 3.0 * v * (1.0 - v * v) * std::atanh(1.0 / v);
}

}  // namespace

double kappa_approx(double eta_perp, double eta_par) {
    if (!(eta_perp > 0.0) || !(eta_par > 0.0)) throw std::invalid_argument("kappa_approx: eta must be positive");
    const double ratio = eta_perp / eta_par;
    const double w = 1.0 - ratio * ratio;
    const double prefactor = 1.0 / (8.0 * std::sqrt(std::numbers::pi) * eta_perp * eta_perp * eta_par);
    return prefactor * closed_form_bracket(w);
}

double kappa_approx(const TrapGeometry& geom) { return kappa_approx(geom.eta_perp(), geom.eta_par()); }

double kappa_approx_aligned(const TrapGeometry& geom) { return -kappa_approx(geom); }

RatioOptimum optimize_ratio(double eta_perp, bool use_approx, const QuadratureSpec& quad) {
    if (!(eta_perp > 0.0 && eta_perp <= 0.5)) throw std::invalid_argument("optimize_ratio: eta_perp must lie in (0, 0.5]");
    constexpr double lo = 1.01;
    double hi = 10.0;
    if (use_approx) {
        const auto objective = [&](double r) { return -std::abs(kappa_approx(eta_perp, r * eta_perp)); };
        const LineMinimum best = golden_section_minimize(objective, lo, hi, 1e-4);
        return {best.x, -kappa_approx(eta_perp, best.x * eta_perp)};
    }
    hi = std::min(hi, 1.0 / eta_perp);
    if (!(hi > lo)) throw std::invalid_argument("optimize_ratio: no admissible ratio with eta_par <= 1");
    const auto objective = [&](double r) { return -std::abs(kappa(TrapGeometry(eta_perp, r * eta_perp), quad)); };
    const LineMinimum best = golden_section_minimize(objective, lo, hi, 1e-4);
    return {best.x, kappa(TrapGeometry(eta_perp, best.x * eta_perp), quad)};
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    grid.back() = hi;
    return grid;
}

std::string format_sig9(double value) {
    if (std::isnan(value)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

KappaMap kappa_map(std::span<const double> eta_perp_grid, std::span<const double> eta_par_grid,
                   const QuadratureSpec& quad, unsigned jobs) {
    quad.validate();
    auto check_grid = [](std::span<const double> grid, const char* name) {
        if (grid.empty()) throw std::invalid_argument(std::string("kappa_map: empty ") + name + " grid");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!(grid[i] > 0.0 && grid[i] <= 1.0)) {
                throw std::invalid_argument(std::string("kappa_map: ") + name + " outside (0, 1]");
            }
            if (i > 0 && !(grid[i] > grid[i - 1])) {
                throw std::invalid_argument(std::string("kappa_map: ") + name + " grid not ascending");
            }
        }
    };
    check_grid(eta_perp_grid, "eta_perp");
    check_grid(eta_par_grid, "eta_par");

    KappaMap map;
    map.eta_perp.assign(eta_perp_grid.begin(), eta_perp_grid.end());
    map.eta_par.assign(eta_par_grid.begin(), eta_par_grid.end());
    const std::size_t cells = map.eta_perp.size() * map.eta_par.size();
    map.kappa.assign(cells, std::nan(""));
    map.mean_g.assign(cells, std::nan(""));
    map.converged.assign(cells, 0);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t cell = next++; cell < cells; cell = next++) {
            const std::size_t i = cell / map.eta_par.size();
            const std::size_t j = cell % map.eta_par.size();
            try {
                const DipoleExpectation e = mean_fg(TrapGeometry(map.eta_perp[i], map.eta_par[j]), quad);
                map.kappa[cell] = e.kappa();
                map.mean_g[cell] = e.mean_g;
                map.converged[cell] = 1;
            } catch (const NonConvergence&) {
                // left as NaN
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    return map;
}

void KappaMap::write_csv(std::ostream& out) const {
    out << "eta_perp\\eta_par";
    for (double v : eta_par) out << ',' << format_sig9(v);
    out << '\n';
    for (std::size_t i = 0; i < eta_perp.size(); ++i) {
        out << format_sig9(eta_perp[i]);
        for (std::size_t j = 0; j < eta_par.size(); ++j) out << ',' << format_sig9(at(i, j));
        out << '\n';
    }
}

}  // namespace latgate

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qmc/errors.hpp"
#include "qmc/weights.hpp"

namespace qmc {

/// Parameters of the asymptotic regime: relative message support sigma,
/// relative kernel support lambda, relative distance delta.
struct AsymParams {
    double sigma = 1.0;
    double lambda = 0.0;
    double delta = 0.0;
};

inline void validate_asym_params(const AsymParams& p) {
    if (!(p.sigma > 0.0 && p.sigma <= 1.0)) throw OutOfRangeError("sigma must lie in (0,1]");
    if (!(p.lambda >= 0.0 && p.lambda < p.sigma))
        throw OutOfRangeError("lambda must lie in [0, sigma)");
    if (!(p.delta >= 0.0)) throw OutOfRangeError("delta must be nonnegative");
}

/// The alphabet's ball-volume exponent
///   H(delta) = min { log_|A| sum_a Z^(w(a)-delta) : Z in (0,1] },
/// valid for delta in [0, gamma]. Minimized in t = ln Z, where the objective
/// f(t) = -t*delta + ln sum_a e^(t*w(a)) is convex; bisection on f' with a
/// hard floor at t = -700 against underflow. H(0) = 0 is the infimum as
/// Z -> 0+; H(gamma) = 1 at the boundary Z = 1.
inline double entropy(const WeightFunction& w, double delta) {
    double gamma = w.gamma.get_d();
    if (delta < -1e-15 || delta > gamma * (1 + 1e-12) + 1e-15)
        throw OutOfRangeError("entropy argument outside [0, gamma]");
    if (delta <= 0.0) return 0.0;

    std::vector<double> weights(w.table.size());
    for (std::size_t a = 0; a < w.table.size(); ++a) weights[a] = w.table[a].get_d();
    const double log_card = std::log(static_cast<double>(w.ring.cardinality()));

    auto fprime = [&](double t) {
        double num = 0.0, den = 0.0;
        for (double wa : weights) {
            double e = std::exp(t * wa);
            num += wa * e;
            den += e;
        }
        return num / den - delta;
    };
    auto fvalue = [&](double t) {
        double sum = 0.0;
        for (double wa : weights) sum += std::exp(t * wa);
        return -t * delta + std::log(sum);
    };

    double lo = -700.0, hi = 0.0;
    if (fprime(hi) <= 0.0) return fvalue(0.0) / log_card;  // minimizer at the boundary Z = 1
    if (fprime(lo) >= 0.0) return fvalue(lo) / log_card;
    for (int it = 0; it < 300; ++it) {
        double mid = 0.5 * (lo + hi);
        double fp = fprime(mid);
        if (std::abs(fp) < 1e-12) return fvalue(mid) / log_card;
        (fp < 0.0 ? lo : hi) = mid;
    }
    return fvalue(0.5 * (lo + hi)) / log_card;
}

/// sigma - delta/gamma for delta <= gamma*sigma, otherwise 0.
inline double asymptotic_plotkin(const AsymParams& p, const Rat& gamma) {
    validate_asym_params(p);
    double g = gamma.get_d();
    if (p.delta > g * p.sigma) return 0.0;
    return p.sigma - p.delta / g;
}

/// sigma - lambda - H(xi) for a caller-chosen rho, with
/// xi = (rho - gamma*lambda)/(sigma - lambda). Not applicable outside
/// gamma*lambda <= rho < gamma*sigma - sqrt(gamma (sigma-lambda)(gamma sigma - delta)),
/// delta <= gamma*sigma.
inline std::optional<double> asymptotic_elias_at(const AsymParams& p, const WeightFunction& w,
                                                 double rho) {
    validate_asym_params(p);
    double g = w.gamma.get_d();
    if (p.delta > g * p.sigma) return std::nullopt;
    if (rho < g * p.lambda) return std::nullopt;
    double root = std::sqrt(g * (p.sigma - p.lambda) * (g * p.sigma - p.delta));
    if (!(rho < g * p.sigma - root)) return std::nullopt;
    double xi = (rho - g * p.lambda) / (p.sigma - p.lambda);
    xi = std::min(std::max(xi, 0.0), g);
    return p.sigma - p.lambda - entropy(w, xi);
}

/// The optimized form: sigma - lambda - H(gamma - sqrt(gamma (gamma sigma - delta)/(sigma - lambda))).
/// Not applicable when delta < gamma*lambda (negative radius) or delta > gamma*sigma.
inline std::optional<double> asymptotic_elias(const AsymParams& p, const WeightFunction& w) {
    validate_asym_params(p);
    double g = w.gamma.get_d();
    if (p.delta > g * p.sigma) return std::nullopt;
    double xi = g - std::sqrt(g * (g * p.sigma - p.delta) / (p.sigma - p.lambda));
    if (xi < -1e-12) return std::nullopt;
    xi = std::min(std::max(xi, 0.0), g);
    return p.sigma - p.lambda - entropy(w, xi);
}

/// sigma - lambda - H((delta - 2 gamma lambda)/(2 (sigma - lambda))) for
/// delta > 2*gamma*lambda.
inline std::optional<double> asymptotic_sphere(const AsymParams& p, const WeightFunction& w) {
    validate_asym_params(p);
    double g = w.gamma.get_d();
    if (!(p.delta > 2.0 * g * p.lambda)) return std::nullopt;
    double arg = (p.delta - 2.0 * g * p.lambda) / (2.0 * (p.sigma - p.lambda));
    arg = std::min(std::max(arg, 0.0), g);
    return p.sigma - p.lambda - entropy(w, arg);
}

/// Evaluations of all three asymptotic bounds over a delta grid.
struct BoundCurve {
    std::vector<double> delta;
    std::vector<std::optional<double>> plotkin, elias, sphere;
};

/// Evaluates the bounds at delta = step, 2*step, ... up to gamma*sigma.
/// Emitted values are clamped into [0, sigma - lambda]: rates are
/// nonnegative and sigma - lambda is an upper bound on every rate, so the
/// clamp never discards information a plot would show.
inline BoundCurve evaluate_curves(const WeightFunction& w, double sigma, double lambda,
                                  double step) {
    if (!(step > 0.0)) throw OutOfRangeError("grid step must be positive");
    validate_asym_params({sigma, lambda, step});
    BoundCurve curve;
    double g = w.gamma.get_d();
    auto clamp = [&](std::optional<double> v) -> std::optional<double> {
        if (!v) return v;
        return std::min(std::max(*v, 0.0), sigma - lambda);
    };
    for (int i = 1;; ++i) {
        double d = i * step;
        if (d > g * sigma * (1 + 1e-12)) break;
        AsymParams p{sigma, lambda, std::min(d, g * sigma)};
        curve.delta.push_back(p.delta);
        curve.plotkin.push_back(clamp(asymptotic_plotkin(p, w.gamma)));
        curve.elias.push_back(clamp(asymptotic_elias(p, w)));
        curve.sphere.push_back(clamp(asymptotic_sphere(p, w)));
    }
    return curve;
}

}  // namespace qmc

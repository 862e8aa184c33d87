#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "special.hpp"
#include "unit_families.hpp"

namespace unitdist::lcg_inference {

using unit_families::UnitFamily;

// Observations strictly inside (0,1). Build through make_dataset, which
// validates every value.
struct Dataset {
    std::string name;
    std::vector<double> values;
};

inline Dataset make_dataset(std::string name, std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("dataset must be nonempty");
    for (const double v : values)
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("dataset values must lie strictly in (0, 1)");
    return {std::move(name), std::move(values)};
}

enum class EstimationMethod { mom, ml_quadratic, ml_exact, closed_form };

inline const char* method_name(EstimationMethod m) {
    switch (m) {
        case EstimationMethod::mom: return "MoM";
        case EstimationMethod::ml_quadratic: return "ML-quadratic";
        case EstimationMethod::ml_exact: return "ML-exact";
        case EstimationMethod::closed_form: return "ML-closed-form";
    }
    return "unknown";
}

struct EstimationResult {
    double estimate = 0.0;
    EstimationMethod method = EstimationMethod::mom;
    // Value of the fitted family's exact score (the n-scaled log-likelihood
    // derivative) at the estimate; a diagnostic for how far the chosen root
    // sits from stationarity.
    double score_residual = 0.0;
    // Real roots the solver examined before selecting the estimate.
    std::vector<double> candidate_roots;
};

namespace detail {

inline void check_shape(double beta_shape) {
    if (!(std::isfinite(beta_shape) && beta_shape > 0.0))
        throw std::invalid_argument("shape parameter must be finite and > 0");
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// T = -(1/n) Σ log(1 - uᵢ), the sufficient statistic of the shape.
inline double t_statistic(const Dataset& data) {
    double s = 0.0;
    for (const double u : data.values) s += std::log1p(-u);
    return -s / static_cast<double>(data.values.size());
}

// Real roots of a x² + b x + c = 0 (a ≠ 0), stable against cancellation.
inline std::vector<double> quadratic_real_roots(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    const double q = b >= 0.0 ? -0.5 * (b + sq) : -0.5 * (b - sq);
    std::vector<double> roots;
    roots.push_back(q / a);
    roots.push_back(q != 0.0 ? c / q : -b / a - roots[0]);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Picks max(roots); the solver convention is "largest real part, then
// require positivity". With real coefficients the roots are either both real
// or a conjugate pair (returned empty above), so this reduces to max().
inline double select_positive_root(const std::vector<double>& roots, const char* context) {
    if (!roots.empty()) {
        const double best = *std::max_element(roots.begin(), roots.end());
        if (best > 0.0) return best;
    }
    throw estimation_error(std::string(context) +
                           ": estimating equation has no positive real root");
}

}  // namespace detail

// hazard(u) = β(1+β)(1+u) / ((2+β+uβ)(1-u)); increasing on (0,1).
inline double lcg_hazard(double beta_shape, double u) {
    detail::check_shape(beta_shape);
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("hazard requires u in [0, 1)");
    return beta_shape * (1.0 + beta_shape) * (1.0 + u) /
           ((2.0 + beta_shape + u * beta_shape) * (1.0 - u));
}

inline double lcg_mean(double beta_shape) {
    detail::check_shape(beta_shape);
    const double b = beta_shape;
    return (4.0 + b) / ((2.0 + b) * (2.0 + b));
}

inline double lcg_variance(double beta_shape) {
    detail::check_shape(beta_shape);
    const double b = beta_shape;
    const double s = 2.0 + b;
    return b * (16.0 + 9.0 * b + b * b) / (s * s * s * s * (3.0 + b));
}

// Inverse cdf by bisection on [1e-15, 1 - 1e-15]. The cdf is strictly
// increasing so the bracket is guaranteed; probabilities so extreme that the
// root lies inside the guard band are clamped to it, which is already within
// the 1e-12 accuracy target. No derivative-based refinement: (1-u)^β is flat
// near 1 for large β and stalls such methods.
inline double lcg_quantile(double v, double beta_shape) {
    detail::check_shape(beta_shape);
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("quantile requires a probability in (0, 1)");
    const double b = beta_shape;
    const auto cdf = [b](double u) {
        return 1.0 - std::pow(1.0 - u, b) * (2.0 + b + u * b) / (2.0 + b);
    };
    double lo = 1e-15, hi = 1.0 - 1e-15;
    if (cdf(lo) >= v) return lo;
    if (cdf(hi) <= v) return hi;
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < v ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// n inverse-cdf draws from a seeded 64-bit Mersenne Twister. The generator
// and the uniform mapping are both fully specified, so output is
// byte-identical for a given (n, shape, seed) on any platform.
inline std::vector<double> lcg_sample(std::size_t n, double beta_shape, std::uint64_t seed) {
    detail::check_shape(beta_shape);
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
    std::mt19937_64 gen(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(lcg_quantile(unitdist::detail::uniform01(gen), beta_shape));
    return out;
}

// Exact score: d/dβ of the log-likelihood,
//   n [ 1/β + 1/(1+β) - 1/(2+β) - T ].
inline double lcg_exact_score(const Dataset& data, double beta_shape) {
    detail::check_shape(beta_shape);
    const double n = static_cast<double>(data.values.size());
    const double t = detail::t_statistic(data);
    const double b = beta_shape;
    return n * (1.0 / b + 1.0 / (1.0 + b) - 1.0 / (2.0 + b) - t);
}

// Method of moments: match the sample mean to (4+β)/(2+β)², i.e. solve
//   ū β² + (4ū - 1) β + 4(ū - 1) = 0.
// The discriminant 8ū + 1 is always positive and the root product is
// negative, so exactly one positive root exists.
inline EstimationResult mom_estimate(const Dataset& data) {
    if (data.values.empty()) throw std::invalid_argument("dataset must be nonempty");
    const double ubar = detail::mean_of(data.values);
    const auto roots =
        detail::quadratic_real_roots(ubar, 4.0 * ubar - 1.0, 4.0 * (ubar - 1.0));
    const double est = detail::select_positive_root(roots, "moment estimator");
    return {est, EstimationMethod::mom, lcg_exact_score(data, est), roots};
}

// The quadratic stationarity equation
//   T β² + (3T - 1) β + (2T - 4) = 0
// solved with the same largest-root convention. This is NOT the true score
// equation — differentiating the log-likelihood yields a cubic (below) and
// this quadratic drops one term — but it is kept as a first-class method
// because the reference estimates and the bias/MSE study are defined by it.
// Its solution is inconsistent: the asymptotic bias at shape 2.3 is ≈ -0.31
// no matter how large n grows. For T ≥ 2 both roots are nonpositive and
// estimation_error is thrown.
inline EstimationResult mle_quadratic(const Dataset& data) {
    if (data.values.empty()) throw std::invalid_argument("dataset must be nonempty");
    const double t = detail::t_statistic(data);
    const auto roots = detail::quadratic_real_roots(t, 3.0 * t - 1.0, 2.0 * t - 4.0);
    const double est = detail::select_positive_root(roots, "quadratic likelihood equation");
    return {est, EstimationMethod::ml_quadratic, lcg_exact_score(data, est), roots};
}

// The exact maximum-likelihood estimate: the unique positive root of
//   1/β + 1/(1+β) - 1/(2+β) = T,
// equivalently of the cubic T β³ + (3T-1) β² + (2T-4) β - 2 = 0. The left
// side is strictly decreasing from +inf to 0, and T > 0 for any valid
// dataset, so the root always exists; it is found by expanding a bracket and
// bisecting, which cannot fail.
inline EstimationResult mle_exact(const Dataset& data) {
    if (data.values.empty()) throw std::invalid_argument("dataset must be nonempty");
    const double t = detail::t_statistic(data);
    const auto g = [t](double b) {
        return 1.0 / b + 1.0 / (1.0 + b) - 1.0 / (2.0 + b) - t;
    };
    double lo = 1e-12, hi = 1.0;
    while (g(hi) > 0.0) hi *= 2.0;
    for (int i = 0; i < 400 && hi - lo > 1e-15 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    const double est = 0.5 * (lo + hi);
    return {est, EstimationMethod::ml_exact, lcg_exact_score(data, est), {est}};
}

// Closed-form maximum-likelihood for the Topp-Leone shape:
//   ν̂ = -n / Σ log(uᵢ(2 - uᵢ)).
inline EstimationResult topp_leone_mle(const Dataset& data) {
    if (data.values.empty()) throw std::invalid_argument("dataset must be nonempty");
    double s = 0.0;
    for (const double u : data.values) s += std::log(u * (2.0 - u));
    const double n = static_cast<double>(data.values.size());
    const double est = -n / s;
    return {est, EstimationMethod::closed_form, n / est + s, {est}};
}

// Σ log f(uᵢ). A zero density at any observation returns the -inf sentinel
// rather than throwing: the point is simply outside the family's support.
inline double log_likelihood(const UnitFamily& fam, const Dataset& data) {
    double s = 0.0;
    for (const double u : data.values) {
        const double p = unit_families::family_pdf(fam, u);
        if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
        s += std::log(p);
    }
    return s;
}

inline double aic(const UnitFamily& fam, const Dataset& data, int parameter_count) {
    return 2.0 * parameter_count - 2.0 * log_likelihood(fam, data);
}

}  // namespace unitdist::lcg_inference

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "errors.hpp"
#include "fgm_joint.hpp"

namespace unitdist::convolution_engine {

using fgm_joint::JointSpec;

struct QuadratureConfig {
    // Acceptance tolerance, measured relative to the magnitude of the running
    // estimate (with an absolute floor near the subnormal range). Relative
    // rather than absolute because normalizers legitimately span many orders
    // of magnitude — a gamma shape of 15 puts f_Z(1) near 3e-13, where any
    // absolute rule would stop long before the quotient f/f_Z(1) has its
    // digits.
    double tol = 1e-10;
    int max_depth = 12;  // trapezoid-step halvings after the coarse pass
};

namespace detail {

// One double-exponential node on (0,1). The substitution is
//   u = 1 / (1 + e^{-2w}),  w = (pi/2) sinh t,
// under which the trapezoid rule in t converges at double-exponential rate
// and integrable endpoint singularities (e.g. u^{a-1} with a < 1) need no
// special casing. Both u and 1-u are computed from their own exponential so
// neither loses precision near its endpoint; the weight is
//   du/dt = (pi/4) cosh t / cosh²(w).
struct UnitNode {
    double u;
    double complement;  // 1 - u to full precision
    double weight;
};

inline UnitNode unit_node(double t) {
    constexpr double half_pi = 1.5707963267948966;
    const double w = half_pi * std::sinh(t);
    const double u = 1.0 / (1.0 + std::exp(-2.0 * w));
    const double complement = 1.0 / (1.0 + std::exp(2.0 * w));
    const double ch = std::cosh(w);
    const double weight = 0.5 * half_pi * std::cosh(t) / (ch * ch);
    return {u, complement, weight};
}

// ∫₀¹ f(u) du where f is presented as f(u, 1-u). Abscissae whose u, 1-u, or
// weight underflow to zero lie beyond double precision's reach of the
// endpoints and are skipped; their true contribution is below 1e-300 for any
// integrable f. Refines until two successive trapezoid levels agree within
// cfg.tol relative to the estimate's magnitude, throwing numeric_error (with
// the achieved error) if max_depth halvings are not enough.
template <class F>
double integrate_unit(F&& f, const QuadratureConfig& cfg = {}) {
    constexpr double t_max = 6.0;
    auto eval = [&f](double t) -> double {
        const UnitNode node = unit_node(t);
        if (node.u <= 0.0 || node.complement <= 0.0 || node.weight <= 0.0) return 0.0;
        return node.weight * f(node.u, node.complement);
    };

    double h = 1.0;
    double coarse = eval(0.0);
    for (int i = 1; static_cast<double>(i) * h <= t_max; ++i)
        coarse += eval(i * h) + eval(-i * h);
    double estimate = h * coarse;

    double err = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= cfg.max_depth; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (long j = 1;; ++j) {
            const double t = (2.0 * j - 1.0) * h;
            if (t > t_max) break;
            add += eval(t) + eval(-t);
        }
        const double refined = 0.5 * estimate + h * add;
        err = std::abs(refined - estimate);
        estimate = refined;
        const double scale =
            std::max(std::abs(estimate), std::numeric_limits<double>::min());
        if (level >= 2 && err <= cfg.tol * scale) return estimate;
    }
    throw numeric_error("unit-interval quadrature did not converge to the requested tolerance",
                        err);
}

}  // namespace detail

// Density of the sum Z = X + Y at 1: ∫₀¹ f_{X,Y}(v, 1-v) dv. This is the
// normalizer of the conditional law U = X | X+Y = 1.
inline double fz_at_one(const JointSpec& joint, const QuadratureConfig& quad = {}) {
    return detail::integrate_unit(
        [&joint](double u, double complement) {
            return fgm_joint::joint_pdf(joint, u, complement);
        },
        quad);
}

// The numerically constructed law of U = X | X+Y = 1 for (X,Y) ~ joint.
// The normalizer f_Z(1) is integrated once at construction; evaluation never
// re-integrates. Immutable afterwards, so concurrent evaluation is safe.
class NumericUnitDistribution {
public:
    explicit NumericUnitDistribution(JointSpec joint, QuadratureConfig quad = {})
        : joint_(std::move(joint)), quad_(quad), normalizer_(fz_at_one(joint_, quad_)) {
        if (!(normalizer_ > 0.0) || !std::isfinite(normalizer_))
            throw numeric_error("sum density at 1 is not positive and finite", normalizer_);
    }

    const JointSpec& joint() const noexcept { return joint_; }
    const QuadratureConfig& quadrature() const noexcept { return quad_; }
    double normalizer() const noexcept { return normalizer_; }

private:
    JointSpec joint_;
    QuadratureConfig quad_;
    double normalizer_;
};

// f_U(u) = f_{X,Y}(u, 1-u) / f_Z(1). Endpoints use the marginals' right-limit
// convention; where a marginal diverges (gamma shape < 1) range_error
// propagates.
inline double unit_pdf(const NumericUnitDistribution& dist, double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("unit density requires u in [0, 1]");
    return fgm_joint::joint_pdf(dist.joint(), u, 1.0 - u) / dist.normalizer();
}

// F_U(u) = ∫₀ᵘ f_U. Evaluated as u ∫₀¹ f_U(u t) dt so the only possible
// singularity sits at an endpoint of the transformed interval, where the
// double-exponential rule absorbs it. 1 - u t is assembled as
// (1-t) + t (1-u), which is exact near t = 1.
inline double unit_cdf(const NumericUnitDistribution& dist, double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("unit cdf requires u in [0, 1]");
    if (u == 0.0) return 0.0;
    const double omu = 1.0 - u;
    const double mass = detail::integrate_unit(
        [&](double t, double omt) {
            const double v = u * t;
            if (v <= 0.0 || v >= 1.0) return 0.0;
            const double complement = omt + t * omu;
            return fgm_joint::joint_pdf(dist.joint(), v, complement);
        },
        dist.quadrature());
    return mass * u / dist.normalizer();
}

}  // namespace unitdist::convolution_engine

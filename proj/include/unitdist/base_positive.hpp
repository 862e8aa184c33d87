#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "special.hpp"

namespace unitdist::base_positive {

enum class MarginalKind { exponential, gamma, lindley };

// A validated positive-support marginal law. Three kinds:
//   Exponential(theta):  theta e^{-theta x}
//   Gamma(alpha, beta):  alpha^beta x^{beta-1} e^{-alpha x} / Γ(beta)   (rate alpha, shape beta)
//   Lindley(theta):      theta² (1+x) e^{-theta x} / (1+theta)
class PositiveDistSpec {
public:
    static PositiveDistSpec exponential(double theta) {
        return PositiveDistSpec(MarginalKind::exponential, theta, 1.0);
    }
    static PositiveDistSpec gamma(double alpha, double beta_shape) {
        return PositiveDistSpec(MarginalKind::gamma, alpha, beta_shape);
    }
    static PositiveDistSpec lindley(double theta) {
        return PositiveDistSpec(MarginalKind::lindley, theta, 1.0);
    }

    MarginalKind kind() const noexcept { return kind_; }
    double rate() const noexcept { return rate_; }
    double shape() const noexcept { return shape_; }

private:
    PositiveDistSpec(MarginalKind kind, double rate, double shape)
        : kind_(kind), rate_(rate), shape_(shape) {
        if (!(std::isfinite(rate_) && rate_ > 0.0))
            throw std::invalid_argument("marginal rate parameter must be finite and > 0");
        if (!(std::isfinite(shape_) && shape_ > 0.0))
            throw std::invalid_argument("marginal shape parameter must be finite and > 0");
    }

    MarginalKind kind_;
    double rate_;
    double shape_;
};

// log density. Underflow-free for x up to ~700/rate since every branch is
// linear in x. At x = 0 the right-limit convention applies: the limit value
// is returned when finite (-inf where the density vanishes), and a shape < 1
// gamma, whose density diverges there, raises range_error.
inline double log_pdf(const PositiveDistSpec& m, double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("marginal density requires finite x >= 0");
    switch (m.kind()) {
        case MarginalKind::exponential:
            return std::log(m.rate()) - m.rate() * x;
        case MarginalKind::lindley:
            return 2.0 * std::log(m.rate()) + std::log1p(x) - m.rate() * x - std::log1p(m.rate());
        case MarginalKind::gamma: {
            const double s = m.shape();
            if (x == 0.0) {
                if (s < 1.0)
                    throw std::range_error("gamma density diverges at x = 0 for shape < 1");
                if (s == 1.0) return std::log(m.rate());
                return -std::numeric_limits<double>::infinity();
            }
            return s * std::log(m.rate()) + (s - 1.0) * std::log(x) - m.rate() * x -
                   std::lgamma(s);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();  // unreachable
}

inline double pdf(const PositiveDistSpec& m, double x) {
    return std::exp(log_pdf(m, x));
}

// Cumulative distribution function on [0, +inf].
inline double cdf(const PositiveDistSpec& m, double x) {
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("marginal cdf requires x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    switch (m.kind()) {
        case MarginalKind::exponential:
            return -std::expm1(-m.rate() * x);
        case MarginalKind::gamma:
            return detail::lower_reg_gamma(m.shape(), m.rate() * x);
        case MarginalKind::lindley: {
            // 1 - (1 + θx/(1+θ)) e^{-θx}, rearranged to avoid cancellation near 0
            const double t = m.rate() * x;
            const double c = t / (1.0 + m.rate());
            return -std::expm1(-t) - c * std::exp(-t);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();  // unreachable
}

}  // namespace unitdist::base_positive

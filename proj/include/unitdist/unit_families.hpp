#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "convolution_engine.hpp"
#include "fgm_joint.hpp"
#include "special.hpp"

namespace unitdist::unit_families {

enum class FamilyKind {
    uniform,
    beta,
    dist1,  // exponential | exponential sum:      ∝ e^{-δu}
    dist2,  // coupled equal-rate exponentials:    symmetric, copula-shaped
    dist3,  // lindley | lindley, equal rates:     (6/13)(2-u)(1+u)
    dist4,  // lindley | lindley, rate gap δ:      ∝ (1+u)(2-u) e^{-δu}
    dist5,  // exponential | lindley, equal rates: (2/3)(2-u)
    dist6,  // exponential | lindley, rate gap δ:  ∝ (2-u) e^{-δu}
    dist7,  // exponential | gamma, rate gap δ:    ∝ (1-u)^{β-1} e^{-δ(1-u)}
    lcg,    // lindley | gamma, equal rates:       ∝ (1+u)(1-u)^{β-1}
    topp_leone,
};

// A closed-form unit-interval family. Construct through the factories; each
// validates its own parameters. The δ-parameterized kinds are continuous in
// δ at 0 and switch to their limit branch for |δ| < delta_limit_threshold,
// where the generic expressions lose all significant digits.
class UnitFamily {
public:
    static constexpr double delta_limit_threshold = 1e-8;

    static UnitFamily uniform() { return {FamilyKind::uniform, 0.0, 0.0}; }
    static UnitFamily beta(double b1, double b2) {
        require(std::isfinite(b1) && b1 > 0.0 && std::isfinite(b2) && b2 > 0.0,
                "beta shapes must be finite and > 0");
        return {FamilyKind::beta, b1, b2};
    }
    static UnitFamily dist1(double delta) {
        require(std::isfinite(delta), "delta must be finite");
        return {FamilyKind::dist1, delta, 0.0};
    }
    static UnitFamily dist2(double theta, double alpha) {
        require(std::isfinite(theta) && theta > 0.0, "theta must be finite and > 0");
        require(std::isfinite(alpha) && alpha >= -1.0 && alpha <= 1.0,
                "alpha must lie in [-1, 1]");
        return {FamilyKind::dist2, theta, alpha};
    }
    static UnitFamily dist3() { return {FamilyKind::dist3, 0.0, 0.0}; }
    static UnitFamily dist4(double delta) {
        require(std::isfinite(delta), "delta must be finite");
        return {FamilyKind::dist4, delta, 0.0};
    }
    static UnitFamily dist5() { return {FamilyKind::dist5, 0.0, 0.0}; }
    static UnitFamily dist6(double delta) {
        require(std::isfinite(delta), "delta must be finite");
        return {FamilyKind::dist6, delta, 0.0};
    }
    static UnitFamily dist7(double beta_shape, double delta) {
        require(std::isfinite(beta_shape) && beta_shape > 0.0,
                "shape must be finite and > 0");
        require(std::isfinite(delta), "delta must be finite");
        return {FamilyKind::dist7, beta_shape, delta};
    }
    static UnitFamily lcg(double beta_shape) {
        require(std::isfinite(beta_shape) && beta_shape > 0.0,
                "shape must be finite and > 0");
        return {FamilyKind::lcg, beta_shape, 0.0};
    }
    static UnitFamily topp_leone(double nu) {
        require(std::isfinite(nu) && nu > 0.0, "shape must be finite and > 0");
        return {FamilyKind::topp_leone, nu, 0.0};
    }

    FamilyKind kind() const noexcept { return kind_; }
    // Meaning by kind: beta → (b1, b2); dist1/4/6 → (delta, -); dist2 →
    // (theta, alpha); dist7 → (shape, delta); lcg/topp_leone → (shape, -).
    double param1() const noexcept { return p1_; }
    double param2() const noexcept { return p2_; }

private:
    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }
    UnitFamily(FamilyKind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}

    FamilyKind kind_;
    double p1_;
    double p2_;
};

inline std::string family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::uniform: return "uniform";
        case FamilyKind::beta: return "beta";
        case FamilyKind::dist1: return "dist1";
        case FamilyKind::dist2: return "dist2";
        case FamilyKind::dist3: return "dist3";
        case FamilyKind::dist4: return "dist4";
        case FamilyKind::dist5: return "dist5";
        case FamilyKind::dist6: return "dist6";
        case FamilyKind::dist7: return "dist7";
        case FamilyKind::lcg: return "lcg";
        case FamilyKind::topp_leone: return "toppleone";
    }
    return "unknown";
}

namespace detail {

// ∫₀¹ (1+t)(2-t) e^{-δt} dt. The closed form
//   [(2δ²+δ-2) + e^{-δ}(2+δ-2δ²)] / δ³
// cancels catastrophically for small |δ| (it behaves like 13/6 + O(δ) while
// both bracket terms are O(δ²) apart), so below |δ| = 0.5 the Taylor series
// Σ_k (-δ)^k/k! [2/(k+1) + 1/(k+2) - 1/(k+3)] is used; the two evaluations
// agree to machine precision on the seam. For δ < 0 the closed form is
// applied after factoring e^{-δ} out of the bracket, keeping every exponent
// nonpositive.
inline double tilted_moment_1u_2u(double delta) {
    if (std::abs(delta) < 0.5) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 0; k < 64; ++k) {
            if (k > 0) term *= -delta / k;
            const double add = term * (2.0 / (k + 1.0) + 1.0 / (k + 2.0) - 1.0 / (k + 3.0));
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    const double a = 2.0 * delta * delta + delta - 2.0;
    const double b = 2.0 + delta - 2.0 * delta * delta;
    const double d3 = delta * delta * delta;
    if (delta > 0.0) return (a + b * std::exp(-delta)) / d3;
    return std::exp(-delta) * (a * std::exp(delta) + b) / d3;
}

// ∫₀¹ (2-t) e^{-δt} dt, same evaluation scheme; closed form
// [(2δ-1) + (1-δ) e^{-δ}] / δ², series terms 2/(k+1) - 1/(k+2).
inline double tilted_moment_2u(double delta) {
    if (std::abs(delta) < 0.5) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 0; k < 64; ++k) {
            if (k > 0) term *= -delta / k;
            const double add = term * (2.0 / (k + 1.0) - 1.0 / (k + 2.0));
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    const double a = 2.0 * delta - 1.0;
    const double b = 1.0 - delta;
    const double d2 = delta * delta;
    if (delta > 0.0) return (a + b * std::exp(-delta)) / d2;
    return std::exp(-delta) * (a * std::exp(delta) + b) / d2;
}

inline void check_unit_argument(double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("family evaluation requires u in [0, 1]");
}

}  // namespace detail

// Density at u ∈ [0,1]. Endpoints return the one-sided limit when it is
// finite; a divergent limit (a shape below 1 against its endpoint) raises
// range_error. Symmetric families group their mirrored factors so that
// f(u) and f(1-u) are computed through identical operations.
inline double family_pdf(const UnitFamily& fam, double u) {
    detail::check_unit_argument(u);
    constexpr double thr = UnitFamily::delta_limit_threshold;
    switch (fam.kind()) {
        case FamilyKind::uniform:
            return 1.0;

        case FamilyKind::beta: {
            const double b1 = fam.param1(), b2 = fam.param2();
            if (u == 0.0) {
                if (b1 < 1.0) throw std::range_error("beta density diverges at u = 0");
                if (b1 > 1.0) return 0.0;
                return std::exp(-unitdist::detail::log_beta(b1, b2));
            }
            if (u == 1.0) {
                if (b2 < 1.0) throw std::range_error("beta density diverges at u = 1");
                if (b2 > 1.0) return 0.0;
                return std::exp(-unitdist::detail::log_beta(b1, b2));
            }
            return std::exp((b1 - 1.0) * std::log(u) + (b2 - 1.0) * std::log1p(-u) -
                            unitdist::detail::log_beta(b1, b2));
        }

        case FamilyKind::dist1: {
            const double d = fam.param1();
            if (std::abs(d) < thr) return 1.0;
            if (d > 0.0) return d * std::exp(-d * u) / -std::expm1(-d);
            return d * std::exp(d * (1.0 - u)) / std::expm1(d);
        }

        case FamilyKind::dist2: {
            const double theta = fam.param1(), alpha = fam.param2();
            const double gx = 1.0 - 2.0 * std::exp(-theta * u);
            const double gy = 1.0 - 2.0 * std::exp(-theta * (1.0 - u));
            const double et = std::exp(-theta);
            const double den =
                1.0 + alpha * (1.0 + 4.0 * et - 4.0 / theta + 4.0 * et / theta);
            return (1.0 + alpha * (gx * gy)) / den;
        }

        case FamilyKind::dist3:
            return (6.0 / 13.0) * ((2.0 - u) * (1.0 + u));

        case FamilyKind::dist4: {
            const double d = fam.param1();
            const double shape = (1.0 + u) * (2.0 - u);
            if (std::abs(d) < thr) return shape * (6.0 / 13.0);
            if (d <= -0.5) {
                const double a = 2.0 * d * d + d - 2.0;
                const double b = 2.0 + d - 2.0 * d * d;
                return shape * std::exp(d * (1.0 - u)) * (d * d * d) /
                       (a * std::exp(d) + b);
            }
            return shape * std::exp(-d * u) / detail::tilted_moment_1u_2u(d);
        }

        case FamilyKind::dist5:
            return (2.0 / 3.0) * (2.0 - u);

        case FamilyKind::dist6: {
            const double d = fam.param1();
            const double shape = 2.0 - u;
            if (std::abs(d) < thr) return shape * (2.0 / 3.0);
            if (d <= -0.5) {
                const double a = 2.0 * d - 1.0;
                const double b = 1.0 - d;
                return shape * std::exp(d * (1.0 - u)) * (d * d) / (a * std::exp(d) + b);
            }
            return shape * std::exp(-d * u) / detail::tilted_moment_2u(d);
        }

        case FamilyKind::dist7: {
            const double b = fam.param1();
            const double d = std::abs(fam.param2()) < thr ? 0.0 : fam.param2();
            if (u == 1.0) {
                if (b < 1.0) throw std::range_error("density diverges at u = 1 for shape < 1");
                const double k = d == 0.0 ? 1.0 / b : unitdist::detail::unit_exp_moment(d, b);
                return b > 1.0 ? 0.0 : 1.0 / k;
            }
            if (d == 0.0) return b * std::pow(1.0 - u, b - 1.0);
            const double k = unitdist::detail::unit_exp_moment(d, b);
            return std::exp((b - 1.0) * std::log1p(-u) - d * (1.0 - u)) / k;
        }

        case FamilyKind::lcg: {
            const double b = fam.param1();
            if (u == 1.0) {
                if (b < 1.0) throw std::range_error("density diverges at u = 1 for shape < 1");
                return b > 1.0 ? 0.0 : b * (1.0 + b) / (2.0 + b) * 2.0;
            }
            return b * (1.0 + b) / (2.0 + b) * (1.0 + u) * std::pow(1.0 - u, b - 1.0);
        }

        case FamilyKind::topp_leone: {
            const double nu = fam.param1();
            if (u == 0.0) {
                if (nu < 1.0) throw std::range_error("density diverges at u = 0 for shape < 1");
                return nu > 1.0 ? 0.0 : 2.0;
            }
            return 2.0 * nu * (1.0 - u) * std::pow(u * (2.0 - u), nu - 1.0);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();  // unreachable
}

// Cumulative distribution function on [0,1]. Exact closed forms where the
// family admits one; the remaining kinds integrate their density with the
// same double-exponential rule the construction engine uses.
inline double family_cdf(const UnitFamily& fam, double u) {
    detail::check_unit_argument(u);
    constexpr double thr = UnitFamily::delta_limit_threshold;
    switch (fam.kind()) {
        case FamilyKind::uniform:
            return u;

        case FamilyKind::dist1: {
            const double d = fam.param1();
            if (std::abs(d) < thr) return u;
            return std::expm1(-d * u) / std::expm1(-d);
        }

        case FamilyKind::dist3:
            return (6.0 / 13.0) * (2.0 * u + u * u / 2.0 - u * u * u / 3.0);

        case FamilyKind::dist5:
            return (2.0 / 3.0) * (2.0 * u - u * u / 2.0);

        case FamilyKind::lcg: {
            const double b = fam.param1();
            return 1.0 - std::pow(1.0 - u, b) * (2.0 + b + u * b) / (2.0 + b);
        }

        case FamilyKind::topp_leone:
            return std::pow(u * (2.0 - u), fam.param1());

        default: {
            if (u == 0.0) return 0.0;
            if (u == 1.0) return 1.0;
            return u * convolution_engine::detail::integrate_unit(
                           [&](double t, double /*omt*/) {
                               const double v = u * t;
                               if (v <= 0.0 || v >= 1.0) return 0.0;
                               return family_pdf(fam, v);
                           },
                           convolution_engine::QuadratureConfig{});
        }
    }
}

// The generating pair: a bivariate law whose conditional U = X | X+Y = 1
// reproduces this family. The free rate is pinned so every parameter stays
// positive for either sign of δ (rate pairs (1+δ, 1) for δ ≥ 0 and
// (1, 1-δ) for δ < 0 leave the rate gap at δ). Topp-Leone is not a
// conditional-sum construction and has no generating pair.
inline fgm_joint::JointSpec generating_joint(const UnitFamily& fam) {
    using base_positive::PositiveDistSpec;
    using fgm_joint::JointSpec;
    switch (fam.kind()) {
        case FamilyKind::uniform:
            return JointSpec::independent(PositiveDistSpec::exponential(1.0),
                                          PositiveDistSpec::exponential(1.0));
        case FamilyKind::beta:
            return JointSpec::independent(PositiveDistSpec::gamma(1.0, fam.param1()),
                                          PositiveDistSpec::gamma(1.0, fam.param2()));
        case FamilyKind::dist1: {
            const double d = fam.param1();
            const double base = d >= 0.0 ? 1.0 : 1.0 - d;
            return JointSpec::independent(PositiveDistSpec::exponential(base + d),
                                          PositiveDistSpec::exponential(base));
        }
        case FamilyKind::dist2:
            return JointSpec::fgm(PositiveDistSpec::exponential(fam.param1()),
                                  PositiveDistSpec::exponential(fam.param1()),
                                  fam.param2());
        case FamilyKind::dist3:
            return JointSpec::independent(PositiveDistSpec::lindley(1.0),
                                          PositiveDistSpec::lindley(1.0));
        case FamilyKind::dist4: {
            const double d = fam.param1();
            const double base = d >= 0.0 ? 1.0 : 1.0 - d;
            return JointSpec::independent(PositiveDistSpec::lindley(base + d),
                                          PositiveDistSpec::lindley(base));
        }
        case FamilyKind::dist5:
            return JointSpec::independent(PositiveDistSpec::exponential(1.0),
                                          PositiveDistSpec::lindley(1.0));
        case FamilyKind::dist6: {
            const double d = fam.param1();
            const double base = d >= 0.0 ? 1.0 : 1.0 - d;
            return JointSpec::independent(PositiveDistSpec::exponential(base + d),
                                          PositiveDistSpec::lindley(base));
        }
        case FamilyKind::dist7: {
            const double d = fam.param2();
            const double base = d >= 0.0 ? 1.0 : 1.0 - d;
            return JointSpec::independent(PositiveDistSpec::exponential(base),
                                          PositiveDistSpec::gamma(base + d, fam.param1()));
        }
        case FamilyKind::lcg:
            return JointSpec::independent(PositiveDistSpec::lindley(1.0),
                                          PositiveDistSpec::gamma(1.0, fam.param1()));
        case FamilyKind::topp_leone:
            throw std::invalid_argument("toppleone is not a conditional-sum construction; "
                                        "no generating pair exists");
    }
    throw std::invalid_argument("unknown family kind");  // unreachable
}

}  // namespace unitdist::unit_families

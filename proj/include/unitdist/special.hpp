#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace unitdist::detail {

// Regularized lower incomplete gamma P(s, x) = γ(s, x) / Γ(s).
// Series expansion for x < s + 1, modified Lentz continued fraction for the
// complementary function otherwise; the split keeps both expansions in their
// fast-converging regimes. Absolute accuracy comfortably below 1e-13.
inline double lower_reg_gamma(double s, double x) {
    if (x <= 0.0) return 0.0;
    const double log_prefix = s * std::log(x) - x - std::lgamma(s);

    if (x < s + 1.0) {
        // P(s,x) = x^s e^{-x} / Γ(s) · Σ_{n≥0} x^n / (s (s+1) ... (s+n))
        double term = 1.0 / s;
        double sum = term;
        for (int n = 1; n < 600; ++n) {
            term *= x / (s + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) break;
        }
        return sum * std::exp(log_prefix);
    }

    // Q(s,x) continued fraction (Lentz); P = 1 - Q.
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 600; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(log_prefix) * h;
}

// log Beta(a, b)
inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Exponentially tilted moment of the kernel t^{beta-1} on (0,1):
//   K(delta, beta) = ∫₀¹ t^{beta-1} e^{-delta t} dt.
// Entire in delta. For delta ≤ 1 (including all negative delta) the power
// series Σ_k (-delta)^k / (k! (beta + k)) is used: for delta ≤ 0 every term
// is positive so there is no cancellation, and for 0 < delta ≤ 1 the terms
// decay fast enough that cancellation is harmless. For delta > 1 the series
// alternates with growing terms, so the incomplete-gamma route
// K = Γ(beta) P(beta, delta) / delta^beta is used instead.
inline double unit_exp_moment(double delta, double beta) {
    if (delta > 1.0) {
        const double p = lower_reg_gamma(beta, delta);
        return std::exp(std::lgamma(beta) + std::log(p) - beta * std::log(delta));
    }
    double term = 1.0;
    double sum = 1.0 / beta;
    for (int k = 1; k < 500; ++k) {
        term *= -delta / k;
        const double add = term / (beta + k);
        sum += add;
        if (std::abs(add) < std::abs(sum) * 1e-17) break;
    }
    return sum;
}

// Uniform deviate on the open interval (0,1): the top 53 bits of the
// generator word scaled by 2^-53, redrawing the all-zero word so 0 is
// never returned. Bit-identical on every conforming platform.
inline double uniform01(std::mt19937_64& gen) {
    for (;;) {
        const std::uint64_t bits = gen() >> 11;
        if (bits != 0) return static_cast<double>(bits) * 0x1.0p-53;
    }
}

}  // namespace unitdist::detail

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <unitdist/base_positive.hpp>

#include "oracles.hpp"

using unitdist::base_positive::PositiveDistSpec;
using unitdist::base_positive::cdf;
using unitdist::base_positive::log_pdf;
using unitdist::base_positive::pdf;

namespace {

std::vector<PositiveDistSpec> parameter_grid() {
    const double grid[] = {0.5, 1.0, 2.0, 5.0};
    std::vector<PositiveDistSpec> specs;
    for (const double r : grid) {
        specs.push_back(PositiveDistSpec::exponential(r));
        specs.push_back(PositiveDistSpec::lindley(r));
        for (const double s : grid) specs.push_back(PositiveDistSpec::gamma(r, s));
    }
    return specs;
}

// Smallest x with cdf(x) > 1 - 1e-13, by doubling.
double tail_cutoff(const PositiveDistSpec& m) {
    double x = 1.0;
    while (cdf(m, x) <= 1.0 - 1e-13) x *= 2.0;
    return x;
}

}  // namespace

TEST_CASE("marginal parameter validation") {
    CHECK_THROWS_AS(PositiveDistSpec::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PositiveDistSpec::exponential(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(PositiveDistSpec::gamma(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PositiveDistSpec::gamma(-2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PositiveDistSpec::lindley(0.0), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(PositiveDistSpec::exponential(nan), std::invalid_argument);
}

TEST_CASE("marginal density point values") {
    // right limit at the origin
    CHECK(pdf(PositiveDistSpec::exponential(1.0), 0.0) == Catch::Approx(1.0).margin(1e-15));
    CHECK(pdf(PositiveDistSpec::lindley(1.0), 0.0) == Catch::Approx(0.5).margin(1e-15));

    // gamma with unit shape is the exponential
    const auto g11 = PositiveDistSpec::gamma(1.0, 1.0);
    const auto e1 = PositiveDistSpec::exponential(1.0);
    for (const double x : {0.5, 1.0, 2.0})
        CHECK(pdf(g11, x) == Catch::Approx(pdf(e1, x)).epsilon(1e-14));
}

TEST_CASE("marginal density domain and endpoint semantics") {
    const auto e1 = PositiveDistSpec::exponential(1.0);
    CHECK_THROWS_AS(pdf(e1, -0.1), std::domain_error);
    CHECK_THROWS_AS(pdf(e1, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(pdf(e1, std::numeric_limits<double>::infinity()), std::domain_error);

    // at x = 0 the density is the right limit when finite...
    CHECK(pdf(PositiveDistSpec::gamma(2.0, 1.0), 0.0) == Catch::Approx(2.0));
    CHECK(pdf(PositiveDistSpec::gamma(2.0, 3.0), 0.0) == 0.0);
    // ...and a range error when the limit diverges
    CHECK_THROWS_AS(pdf(PositiveDistSpec::gamma(1.0, 0.5), 0.0), std::range_error);
}

TEST_CASE("marginal cdf point values") {
    const auto e1 = PositiveDistSpec::exponential(1.0);
    CHECK(cdf(e1, 1.0) == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    for (const auto& m : parameter_grid()) CHECK(cdf(m, 0.0) == 0.0);
    CHECK_THROWS_AS(cdf(e1, -1.0), std::domain_error);

    // quadrature oracle for the Lindley cdf
    const auto l2 = PositiveDistSpec::lindley(2.0);
    const double numeric = oracles::integral([&](double x) { return pdf(l2, x); }, 0.0, 3.0);
    CHECK(cdf(l2, 3.0) == Catch::Approx(numeric).margin(1e-10));
}

TEST_CASE("marginal densities integrate to one") {
    for (const auto& m : parameter_grid()) {
        const double cutoff = tail_cutoff(m);
        const double mass =
            oracles::integral_positive([&](double x) { return pdf(m, x); }, cutoff);
        CHECK(mass == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("cdf is the antiderivative of pdf") {
    const double h = 1e-6;
    for (const auto& m : parameter_grid()) {
        for (const double x : {0.5, 1.0, 2.0}) {
            const double deriv = oracles::central_diff(
                [&](double t) { return cdf(m, t); }, x, h);
            CHECK(deriv == Catch::Approx(pdf(m, x)).epsilon(1e-5));
        }
    }
}

TEST_CASE("log density is consistent with density") {
    for (const auto& m : parameter_grid()) {
        for (const double x : {0.01, 0.5, 1.0, 2.0, 10.0}) {
            const double p = pdf(m, x);
            if (p > 1e-300)
                CHECK(std::exp(log_pdf(m, x)) == Catch::Approx(p).epsilon(1e-12));
        }
    }
    // linear in x: no underflow far into the tail
    const auto e2 = PositiveDistSpec::exponential(2.0);
    CHECK(std::isfinite(log_pdf(e2, 700.0 / 2.0)));
    CHECK(log_pdf(e2, 350.0) == Catch::Approx(std::log(2.0) - 700.0));
}

TEST_CASE("gamma cdf matches quadrature at high accuracy") {
    for (const double rate : {0.5, 2.0}) {
        for (const double shape : {0.5, 1.0, 2.0, 5.0}) {
            const auto g = PositiveDistSpec::gamma(rate, shape);
            for (const double x : {0.3, 1.0, 4.0}) {
                const double head = oracles::integral(
                    [&](double s) {
                        const double t = s * s;
                        return t > 0.0 ? pdf(g, t) * 2.0 * s : 0.0;
                    },
                    0.0, std::sqrt(x), 1e-13);
                CHECK(cdf(g, x) == Catch::Approx(head).margin(1e-12));
            }
        }
    }
}

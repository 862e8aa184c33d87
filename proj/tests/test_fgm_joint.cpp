#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include <unitdist/fgm_joint.hpp>

#include "oracles.hpp"

using unitdist::base_positive::PositiveDistSpec;
using unitdist::fgm_joint::JointSpec;
using unitdist::fgm_joint::joint_pdf;

TEST_CASE("dependence parameter admissibility") {
    const auto e1 = PositiveDistSpec::exponential(1.0);
    CHECK_THROWS_AS(JointSpec::fgm(e1, e1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(JointSpec::fgm(e1, e1, -1.0001), std::invalid_argument);
    CHECK_NOTHROW(JointSpec::fgm(e1, e1, 1.0));
    CHECK_NOTHROW(JointSpec::fgm(e1, e1, -1.0));
}

TEST_CASE("alpha zero collapses to the independent product") {
    const auto e1 = PositiveDistSpec::exponential(1.0);
    const auto lind = PositiveDistSpec::lindley(2.0);
    const auto coupled = JointSpec::fgm(e1, lind, 0.0);
    const auto product = JointSpec::independent(e1, lind);
    // one-ulp tolerance, not bitwise: the compiler may constant-fold the
    // transcendental calls of one inlined call site with correctly-rounded
    // arithmetic while the other goes through the runtime libm
    CHECK(joint_pdf(coupled, 0.3, 0.7) ==
          Catch::Approx(joint_pdf(product, 0.3, 0.7)).epsilon(5e-16));
}

TEST_CASE("coupled density at the origin corner") {
    // both cdfs vanish at 0+, so the bracket is 1 + alpha
    const auto e1 = PositiveDistSpec::exponential(1.0);
    for (const double alpha : {-1.0, -0.3, 0.6, 1.0}) {
        const auto j = JointSpec::fgm(e1, e1, alpha);
        CHECK(joint_pdf(j, 0.0, 0.0) == Catch::Approx(1.0 + alpha).margin(1e-14));
    }
}

TEST_CASE("coupled density integrates to one") {
    const auto e1 = PositiveDistSpec::exponential(1.0);
    const auto j = JointSpec::fgm(e1, e1, 1.0);

    // On the truncated square (0,c)² the mass has the closed value
    //   F(c)² + alpha [F(c)² - F(c)]² = F(c)² (1 + alpha e^{-2c}),
    // a sharp cross-check of the 2-D quadrature itself.
    const double fc = 1.0 - std::exp(-10.0);
    const double truncated = oracles::integral_2d(
        [&](double x, double y) { return joint_pdf(j, x, y); }, 0.0, 10.0, 0.0, 10.0,
        1e-8);
    CHECK(truncated == Catch::Approx(fc * fc * (1.0 + std::exp(-20.0))).margin(1e-9));

    // and the total mass is 1 once the domain actually holds the tails
    // (at c = 10 alone the true deficiency is 2e^{-10} ≈ 9.1e-5)
    const double mass = oracles::integral_2d(
        [&](double x, double y) { return joint_pdf(j, x, y); }, 0.0, 40.0, 0.0, 40.0,
        1e-8);
    CHECK(mass == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("marginalization recovers the first marginal") {
    const auto ex = PositiveDistSpec::exponential(1.5);
    const auto gy = PositiveDistSpec::gamma(1.0, 2.0);
    for (const auto& j :
         {JointSpec::independent(ex, gy), JointSpec::fgm(ex, gy, 0.8)}) {
        for (const double x : {0.25, 1.0, 3.0}) {
            const double marginal = oracles::integral(
                [&](double y) { return joint_pdf(j, x, y); }, 0.0, 40.0, 1e-10);
            CHECK(marginal ==
                  Catch::Approx(unitdist::base_positive::pdf(ex, x)).margin(1e-8));
        }
    }
}

TEST_CASE("identical marginals give an exactly symmetric density") {
    const auto lind = PositiveDistSpec::lindley(1.3);
    const auto j = JointSpec::fgm(lind, lind, -0.7);
    for (const double x : {0.2, 1.0, 2.5}) {
        for (const double y : {0.4, 1.7}) {
            CHECK(joint_pdf(j, x, y) == joint_pdf(j, y, x));
        }
    }
}

TEST_CASE("nonnegative on a grid for extreme dependence") {
    const auto e1 = PositiveDistSpec::exponential(1.0);
    const auto l1 = PositiveDistSpec::lindley(1.0);
    for (const double alpha : {-1.0, -0.5, 0.5, 1.0}) {
        const auto j = JointSpec::fgm(e1, l1, alpha);
        for (int i = 1; i <= 50; ++i) {
            for (int k = 1; k <= 50; ++k) {
                const double x = 10.0 * i / 50.0;
                const double y = 10.0 * k / 50.0;
                REQUIRE(joint_pdf(j, x, y) >= 0.0);
            }
        }
    }
}

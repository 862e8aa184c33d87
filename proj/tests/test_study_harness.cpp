#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <unitdist/study_harness.hpp>

using namespace unitdist::study_harness;
using unitdist::lcg_inference::EstimationMethod;
using unitdist::lcg_inference::make_dataset;
using unitdist::unit_families::FamilyKind;
using unitdist::unit_families::UnitFamily;

TEST_CASE("builtin datasets") {
    const auto sc = builtin_dataset("SC16");
    CHECK(sc.name == "SC16");
    REQUIRE(sc.values.size() == 23);
    CHECK(sc.values.front() == 0.853);
    CHECK(sc.values.back() == 0.006);

    const auto p3 = builtin_dataset("p3");  // lookup is case-insensitive
    CHECK(p3.name == "P3");
    REQUIRE(p3.values.size() == 22);
    CHECK(std::count(p3.values.begin(), p3.values.end(), 0.019) == 1);

    CHECK(builtin_dataset("sc16").values == sc.values);

    try {
        builtin_dataset("nope");
        FAIL("expected out_of_range");
    } catch (const std::out_of_range& e) {
        const std::string msg = e.what();
        CHECK(msg.find("nope") != std::string::npos);
        CHECK(msg.find("SC16") != std::string::npos);
        CHECK(msg.find("P3") != std::string::npos);
    }

    const auto index = builtin_dataset_index();
    REQUIRE(index.size() == 2);
    CHECK(index[0].first == "SC16");
    CHECK(index[0].second == 23);
    CHECK(index[1].first == "P3");
    CHECK(index[1].second == 22);
}

TEST_CASE("study validation") {
    StudyConfig cfg;
    cfg.replications = 0;
    CHECK_THROWS_AS(run_bias_mse_study(cfg), std::invalid_argument);
    cfg = StudyConfig{};
    cfg.beta_values = {-1.0};
    CHECK_THROWS_AS(run_bias_mse_study(cfg), std::invalid_argument);
    cfg = StudyConfig{};
    cfg.estimators = {EstimationMethod::closed_form};
    CHECK_THROWS_AS(run_bias_mse_study(cfg), std::invalid_argument);
    cfg = StudyConfig{};
    cfg.sample_sizes = {};
    CHECK_THROWS_AS(run_bias_mse_study(cfg), std::invalid_argument);
}

TEST_CASE("study rows are ordered and reproducible") {
    StudyConfig cfg;
    cfg.sample_sizes = {40, 20};  // deliberately unsorted
    cfg.beta_values = {7.8, 2.3};
    cfg.replications = 50;
    cfg.estimators = {EstimationMethod::ml_quadratic, EstimationMethod::mom,
                      EstimationMethod::mom};  // duplicate collapses
    cfg.base_seed = 7;

    const auto rep = run_bias_mse_study(cfg);
    REQUIRE(rep.rows.size() == 8);

    // row-major over sorted sizes then shapes; estimators in enum order
    CHECK(rep.rows[0].n == 20);
    CHECK(rep.rows[0].beta == 2.3);
    CHECK(rep.rows[0].estimator == EstimationMethod::mom);
    CHECK(rep.rows[1].estimator == EstimationMethod::ml_quadratic);
    CHECK(rep.rows[2].beta == 7.8);
    CHECK(rep.rows[4].n == 40);
    CHECK(rep.rows[7].n == 40);
    CHECK(rep.rows[7].beta == 7.8);

    for (const auto& row : rep.rows) {
        CHECK(row.mse >= 0.0);
        CHECK(row.failures <= cfg.replications);
        CHECK(std::isfinite(row.bias));
    }

    // byte-identical rerun: the report is a pure function of the config
    const auto rep2 = run_bias_mse_study(cfg);
    CHECK(to_csv(rep) == to_csv(rep2));
    // a different base seed produces different estimates
    cfg.base_seed = 8;
    CHECK(to_csv(run_bias_mse_study(cfg)) != to_csv(rep));
}

TEST_CASE("study csv shape") {
    StudyConfig cfg;
    cfg.sample_sizes = {20};
    cfg.beta_values = {2.3};
    cfg.replications = 25;
    const auto csv = to_csv(run_bias_mse_study(cfg));
    CHECK(csv.rfind("n,beta,estimator,bias,bias_se,mse,mse_se,failures\n", 0) == 0);
    CHECK(csv.find("20,2.3,MoM,") != std::string::npos);
    CHECK(csv.find("20,2.3,ML-quadratic,") != std::string::npos);
    // header + 2 data rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const auto j = to_json(run_bias_mse_study(cfg));
    CHECK(j["replications"] == 25);
    CHECK(j["base_seed"] == 1);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["estimator"] == "MoM");
    CHECK(j["rows"][0]["n"] == 20);
    CHECK(j["rows"][0].contains("bias_se"));
    CHECK(j["rows"][0].contains("mse_se"));
    CHECK(j["rows"][0].contains("failures"));
}

TEST_CASE("moderate-sample study statistics are sane") {
    StudyConfig cfg;
    cfg.sample_sizes = {100};
    cfg.beta_values = {2.3};
    cfg.replications = 300;
    const auto rep = run_bias_mse_study(cfg);
    REQUIRE(rep.rows.size() == 2);
    const auto& mom = rep.rows[0];
    const auto& quad = rep.rows[1];
    // the moment estimator is nearly unbiased at n=100 ...
    CHECK(std::abs(mom.bias) < 0.15);
    // ... while the quadratic likelihood equation keeps a systematic
    // negative offset that no sample size removes
    CHECK(quad.bias < -0.15);
    CHECK(mom.bias_se > 0.0);
    CHECK(mom.mse > 0.0);
    CHECK(mom.mse_se > 0.0);
}

TEST_CASE("fit report on the builtin datasets") {
    const auto p3 = builtin_dataset("P3");
    const auto rep = fit_report(p3, {FamilyKind::lcg, FamilyKind::topp_leone});
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.unfit.empty());

    // rows arrive sorted by AIC; the Topp-Leone fit wins on this dataset
    CHECK(rep.rows[0].family == "toppleone");
    CHECK(rep.rows[0].estimator == "ML-closed-form");
    CHECK(rep.rows[0].estimate == Catch::Approx(0.677767).margin(1e-4));
    CHECK(rep.rows[0].loglik == Catch::Approx(5.4983).margin(1e-3));

    double prev = -1e30;
    for (const auto& row : rep.rows) {
        CHECK(row.dataset == "P3");
        CHECK(row.aic == 2.0 - 2.0 * row.loglik);
        CHECK(row.aic >= prev);
        prev = row.aic;
    }

    const auto find = [&](const char* est) {
        for (const auto& r : rep.rows)
            if (r.family == "lcg" && r.estimator == est) return r;
        FAIL("missing row");
        return rep.rows[0];
    };
    CHECK(find("ML-quadratic").estimate == Catch::Approx(1.864777).margin(1e-4));
    CHECK(find("ML-quadratic").loglik == Catch::Approx(2.300867).margin(1e-3));
    CHECK(find("ML-exact").estimate == Catch::Approx(2.196945).margin(1e-4));
    CHECK(find("ML-exact").loglik == Catch::Approx(2.635853).margin(1e-3));

    const auto sc = builtin_dataset("SC16");
    const auto screp = fit_report(sc, {FamilyKind::lcg}, MlChoice::quadratic);
    REQUIRE(screp.rows.size() == 1);
    CHECK(screp.rows[0].estimator == "ML-quadratic");
    CHECK(screp.rows[0].estimate == Catch::Approx(1.987602).margin(1e-4));
    CHECK(screp.rows[0].loglik == Catch::Approx(2.945920).margin(1e-3));

    const auto screx = fit_report(sc, {FamilyKind::lcg}, MlChoice::exact);
    REQUIRE(screx.rows.size() == 1);
    CHECK(screx.rows[0].estimator == "ML-exact");
    CHECK(screx.rows[0].estimate == Catch::Approx(2.311787).margin(1e-4));
}

TEST_CASE("fit report failure handling") {
    // T >= 2: the quadratic equation has no positive root, the exact one does
    const auto extreme = make_dataset("ext", {0.999, 0.998});
    const auto rep = fit_report(extreme, {FamilyKind::lcg});
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].estimator == "ML-exact");
    REQUIRE(rep.unfit.size() == 1);
    CHECK(rep.unfit[0].rfind("lcg/ML-quadratic", 0) == 0);

    CHECK_THROWS_AS(fit_report(extreme, {FamilyKind::dist3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_report(extreme, {}), std::invalid_argument);

    const auto j = to_json(rep);
    CHECK(j["rows"].size() == 1);
    CHECK(j["unfit"].size() == 1);

    const auto csv = to_csv(rep);
    CHECK(csv.rfind("dataset,family,estimator,estimate,loglik,aic\n", 0) == 0);
}

TEST_CASE("curve grids") {
    using unitdist::unit_families::family_cdf;
    using unitdist::unit_families::family_pdf;

    const auto uni = density_curves(UnitFamily::uniform(), 9);
    REQUIRE(uni.size() == 9);
    CHECK(uni[0].u == Catch::Approx(0.1).epsilon(1e-15));
    CHECK(uni[8].u == Catch::Approx(0.9).epsilon(1e-15));
    for (const auto& p : uni) CHECK(p.value == 1.0);

    const auto rising = density_curves(UnitFamily::dist1(-5.0), 33);
    const auto falling = density_curves(UnitFamily::dist1(5.0), 33);
    for (std::size_t i = 1; i < rising.size(); ++i) {
        CHECK(rising[i].value > rising[i - 1].value);
        CHECK(falling[i].value < falling[i - 1].value);
    }

    const auto lin = density_curves(UnitFamily::dist5(), 99);
    for (const auto& p : lin)
        CHECK(p.value == Catch::Approx((2.0 / 3.0) * (2.0 - p.u)).epsilon(1e-14));

    const auto cdf = density_curves(UnitFamily::lcg(2.0), 19, CurveKind::cdf);
    const auto haz = density_curves(UnitFamily::lcg(2.0), 19, CurveKind::hazard);
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        CHECK(cdf[i].value ==
              Catch::Approx(family_cdf(UnitFamily::lcg(2.0), cdf[i].u)).epsilon(1e-13));
        CHECK(haz[i].value ==
              Catch::Approx(unitdist::lcg_inference::lcg_hazard(2.0, haz[i].u))
                  .epsilon(1e-13));
    }
    // hazard through the generic f/(1-F) route for a family without a closed form
    const auto gh = density_curves(UnitFamily::dist3(), 9, CurveKind::hazard);
    CHECK(gh[4].value ==
          Catch::Approx(family_pdf(UnitFamily::dist3(), 0.5) /
                        (1.0 - family_cdf(UnitFamily::dist3(), 0.5)))
              .epsilon(1e-12));

    CHECK_THROWS_AS(density_curves(UnitFamily::uniform(), 1), std::invalid_argument);

    CHECK(to_csv(cdf, CurveKind::cdf).rfind("u,cdf\n", 0) == 0);
    CHECK(to_csv(haz, CurveKind::hazard).rfind("u,hazard\n", 0) == 0);
    CHECK(to_csv(uni, CurveKind::pdf).rfind("u,pdf\n", 0) == 0);

    const auto j = to_json(haz, CurveKind::hazard);
    CHECK(j["what"] == "hazard");
    REQUIRE(j["points"].size() == 19);
    CHECK(j["points"][0].contains("u"));
    CHECK(j["points"][0].contains("hazard"));
}

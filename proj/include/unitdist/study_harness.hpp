#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lcg_inference.hpp"
#include "unit_families.hpp"

namespace unitdist::study_harness {

using lcg_inference::Dataset;
using lcg_inference::EstimationMethod;
using lcg_inference::EstimationResult;
using unit_families::FamilyKind;
using unit_families::UnitFamily;

// ---------------------------------------------------------------------------
// Built-in datasets: unit-capacity computation times of two power-system
// production-costing algorithms, 23 and 22 runs.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline const std::vector<double>& sc16_values() {
    static const std::vector<double> v{
        0.853, 0.759, 0.866, 0.809, 0.717, 0.544, 0.492, 0.403, 0.344, 0.213, 0.116, 0.116,
        0.092, 0.070, 0.059, 0.048, 0.036, 0.029, 0.021, 0.014, 0.011, 0.008, 0.006};
    return v;
}

inline const std::vector<double>& p3_values() {
    static const std::vector<double> v{
        0.853, 0.759, 0.874, 0.800, 0.716, 0.557, 0.503, 0.399, 0.334, 0.207, 0.118, 0.118,
        0.097, 0.078, 0.067, 0.056, 0.044, 0.036, 0.026, 0.019, 0.014, 0.010};
    return v;
}

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace detail

inline Dataset builtin_dataset(std::string_view name) {
    const std::string key = detail::lower(name);
    if (key == "sc16") return lcg_inference::make_dataset("SC16", detail::sc16_values());
    if (key == "p3") return lcg_inference::make_dataset("P3", detail::p3_values());
    throw std::out_of_range("unknown dataset '" + std::string(name) +
                            "'; available: SC16, P3");
}

inline std::vector<std::pair<std::string, std::size_t>> builtin_dataset_index() {
    return {{"SC16", detail::sc16_values().size()}, {"P3", detail::p3_values().size()}};
}

// ---------------------------------------------------------------------------
// Bias/MSE simulation study
// ---------------------------------------------------------------------------

struct StudyConfig {
    std::vector<std::size_t> sample_sizes{20, 40, 60, 80, 100};
    std::vector<double> beta_values{2.30, 7.80, 15.00};
    std::size_t replications = 1000;
    std::vector<EstimationMethod> estimators{EstimationMethod::mom,
                                             EstimationMethod::ml_quadratic};
    std::uint64_t base_seed = 1;
};

struct StudyRow {
    std::size_t n = 0;
    double beta = 0.0;
    EstimationMethod estimator = EstimationMethod::mom;
    double bias = 0.0;
    double bias_se = 0.0;
    double mse = 0.0;
    double mse_se = 0.0;
    std::size_t failures = 0;
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyRow> rows;
};

namespace detail {

inline EstimationResult estimate_by(EstimationMethod m, const Dataset& data) {
    switch (m) {
        case EstimationMethod::mom: return lcg_inference::mom_estimate(data);
        case EstimationMethod::ml_quadratic: return lcg_inference::mle_quadratic(data);
        case EstimationMethod::ml_exact: return lcg_inference::mle_exact(data);
        case EstimationMethod::closed_form: break;
    }
    throw std::invalid_argument("estimator is not applicable to this family");
}

inline std::pair<double, double> mean_and_se(const std::vector<double>& v) {
    if (v.empty()) return {std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::quiet_NaN()};
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (const double x : v) mean += x;
    mean /= n;
    if (v.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace detail

// Draws `replications` samples per (n, beta) cell and applies every
// configured estimator to the same samples, reporting mean error (bias) and
// mean squared error with their Monte-Carlo standard errors. Replicate r of
// cell c is seeded with base_seed + c·replications + r — cells own disjoint
// contiguous seed blocks — so the report is a pure function of the config no
// matter how the replicates would be scheduled. Replicates where an
// estimating equation has no positive root are counted and excluded.
inline StudyReport run_bias_mse_study(const StudyConfig& config) {
    if (config.replications < 1)
        throw std::invalid_argument("study needs at least 1 replication");
    if (config.sample_sizes.empty() || config.beta_values.empty() ||
        config.estimators.empty())
        throw std::invalid_argument("study needs sizes, shapes, and estimators");
    for (const double b : config.beta_values)
        if (!(std::isfinite(b) && b > 0.0))
            throw std::invalid_argument("study shape values must be finite and > 0");
    for (const std::size_t n : config.sample_sizes)
        if (n < 1) throw std::invalid_argument("study sample sizes must be >= 1");
    for (const EstimationMethod m : config.estimators)
        if (m == EstimationMethod::closed_form)
            throw std::invalid_argument("study estimators must be MoM/ML variants");

    StudyConfig cfg = config;
    std::sort(cfg.sample_sizes.begin(), cfg.sample_sizes.end());
    std::sort(cfg.beta_values.begin(), cfg.beta_values.end());
    std::sort(cfg.estimators.begin(), cfg.estimators.end());
    cfg.estimators.erase(std::unique(cfg.estimators.begin(), cfg.estimators.end()),
                         cfg.estimators.end());

    StudyReport report{cfg, {}};
    std::size_t cell = 0;
    for (const std::size_t n : cfg.sample_sizes) {
        for (const double beta : cfg.beta_values) {
            std::vector<std::vector<double>> errors(cfg.estimators.size());
            std::vector<std::size_t> failures(cfg.estimators.size(), 0);
            for (auto& e : errors) e.reserve(cfg.replications);

            for (std::size_t r = 0; r < cfg.replications; ++r) {
                const std::uint64_t seed =
                    cfg.base_seed + static_cast<std::uint64_t>(cell) * cfg.replications + r;
                const Dataset sample{
                    "replicate", lcg_inference::lcg_sample(n, beta, seed)};
                for (std::size_t k = 0; k < cfg.estimators.size(); ++k) {
                    try {
                        const double est =
                            detail::estimate_by(cfg.estimators[k], sample).estimate;
                        errors[k].push_back(est - beta);
                    } catch (const estimation_error&) {
                        ++failures[k];
                    }
                }
            }

            for (std::size_t k = 0; k < cfg.estimators.size(); ++k) {
                std::vector<double> sq(errors[k].size());
                std::transform(errors[k].begin(), errors[k].end(), sq.begin(),
                               [](double e) { return e * e; });
                const auto [bias, bias_se] = detail::mean_and_se(errors[k]);
                const auto [mse, mse_se] = detail::mean_and_se(sq);
                report.rows.push_back({n, beta, cfg.estimators[k], bias, bias_se, mse,
                                       mse_se, failures[k]});
            }
            ++cell;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Goodness-of-fit report
// ---------------------------------------------------------------------------

struct FitRow {
    std::string dataset;
    std::string family;
    std::string estimator;
    double estimate = 0.0;
    double loglik = 0.0;
    double aic = 0.0;
};

struct FitReport {
    std::vector<FitRow> rows;  // sorted by aic ascending (best fit first)
    std::vector<std::string> unfit;
};

enum class MlChoice { both, exact, quadratic };

// Fits each requested family by its designated estimator(s) — both ML
// variants for the conditional-sum family unless narrowed by `ml`, the
// closed form for Topp-Leone — and reports estimate, log-likelihood, and
// AIC = 2k - 2ℓ recomputed from the row's own ℓ. A family whose estimating
// equation fails is listed in `unfit`; the others are still reported.
inline FitReport fit_report(const Dataset& data, const std::vector<FamilyKind>& families,
                            MlChoice ml = MlChoice::both) {
    if (families.empty()) throw std::invalid_argument("no families requested");
    FitReport report;
    auto add_row = [&](const char* famname, const EstimationResult& est,
                       const UnitFamily& fitted) {
        const double ll = lcg_inference::log_likelihood(fitted, data);
        report.rows.push_back({data.name, famname, lcg_inference::method_name(est.method),
                               est.estimate, ll, 2.0 - 2.0 * ll});
    };
    for (const FamilyKind kind : families) {
        switch (kind) {
            case FamilyKind::lcg: {
                if (ml != MlChoice::exact) {
                    try {
                        const auto est = lcg_inference::mle_quadratic(data);
                        add_row("lcg", est, UnitFamily::lcg(est.estimate));
                    } catch (const estimation_error& e) {
                        report.unfit.push_back(std::string("lcg/ML-quadratic: ") + e.what());
                    }
                }
                if (ml != MlChoice::quadratic) {
                    const auto est = lcg_inference::mle_exact(data);
                    add_row("lcg", est, UnitFamily::lcg(est.estimate));
                }
                break;
            }
            case FamilyKind::topp_leone: {
                const auto est = lcg_inference::topp_leone_mle(data);
                add_row("toppleone", est, UnitFamily::topp_leone(est.estimate));
                break;
            }
            default:
                throw std::invalid_argument("fit supports only lcg and toppleone");
        }
    }
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const FitRow& a, const FitRow& b) { return a.aic < b.aic; });
    return report;
}

// ---------------------------------------------------------------------------
// Curve emission (figure data)
// ---------------------------------------------------------------------------

enum class CurveKind { pdf, cdf, hazard };

inline const char* curve_name(CurveKind what) {
    switch (what) {
        case CurveKind::pdf: return "pdf";
        case CurveKind::cdf: return "cdf";
        case CurveKind::hazard: return "hazard";
    }
    return "unknown";
}

struct CurvePoint {
    double u = 0.0;
    double value = 0.0;
};

// Evaluates the family on the uniform interior grid uᵢ = i/(N+1), i = 1..N.
// Hazard uses the closed form where the family has one and f/(1-F) otherwise.
inline std::vector<CurvePoint> density_curves(const UnitFamily& fam, std::size_t grid_size,
                                              CurveKind what = CurveKind::pdf) {
    if (grid_size < 2) throw std::invalid_argument("curve grid needs at least 2 points");
    std::vector<CurvePoint> out;
    out.reserve(grid_size);
    for (std::size_t i = 1; i <= grid_size; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(grid_size + 1);
        double value = 0.0;
        switch (what) {
            case CurveKind::pdf: value = unit_families::family_pdf(fam, u); break;
            case CurveKind::cdf: value = unit_families::family_cdf(fam, u); break;
            case CurveKind::hazard:
                value = fam.kind() == FamilyKind::lcg
                            ? lcg_inference::lcg_hazard(fam.param1(), u)
                            : unit_families::family_pdf(fam, u) /
                                  (1.0 - unit_families::family_cdf(fam, u));
                break;
        }
        out.push_back({u, value});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Emission: comma-delimited text with fixed headers, and a JSON mirror of
// the same fields.
// ---------------------------------------------------------------------------

inline std::string to_csv(const StudyReport& report) {
    std::string out = "n,beta,estimator,bias,bias_se,mse,mse_se,failures\n";
    for (const StudyRow& r : report.rows) {
        out += std::to_string(r.n) + ',' + detail::format_double(r.beta) + ',' +
               lcg_inference::method_name(r.estimator) + ',' +
               detail::format_double(r.bias) + ',' + detail::format_double(r.bias_se) +
               ',' + detail::format_double(r.mse) + ',' + detail::format_double(r.mse_se) +
               ',' + std::to_string(r.failures) + '\n';
    }
    return out;
}

inline std::string to_csv(const FitReport& report) {
    std::string out = "dataset,family,estimator,estimate,loglik,aic\n";
    for (const FitRow& r : report.rows) {
        out += r.dataset + ',' + r.family + ',' + r.estimator + ',' +
               detail::format_double(r.estimate) + ',' + detail::format_double(r.loglik) +
               ',' + detail::format_double(r.aic) + '\n';
    }
    return out;
}

inline std::string to_csv(const std::vector<CurvePoint>& points, CurveKind what) {
    std::string out = std::string("u,") + curve_name(what) + '\n';
    for (const CurvePoint& p : points)
        out += detail::format_double(p.u) + ',' + detail::format_double(p.value) + '\n';
    return out;
}

inline nlohmann::json to_json(const StudyReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const StudyRow& r : report.rows)
        rows.push_back({{"n", r.n},
                        {"beta", r.beta},
                        {"estimator", lcg_inference::method_name(r.estimator)},
                        {"bias", r.bias},
                        {"bias_se", r.bias_se},
                        {"mse", r.mse},
                        {"mse_se", r.mse_se},
                        {"failures", r.failures}});
    return {{"replications", report.config.replications},
            {"base_seed", report.config.base_seed},
            {"rows", rows}};
}

inline nlohmann::json to_json(const FitReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const FitRow& r : report.rows)
        rows.push_back({{"dataset", r.dataset},
                        {"family", r.family},
                        {"estimator", r.estimator},
                        {"estimate", r.estimate},
                        {"loglik", r.loglik},
                        {"aic", r.aic}});
    return {{"rows", rows}, {"unfit", report.unfit}};
}

inline nlohmann::json to_json(const std::vector<CurvePoint>& points, CurveKind what) {
    nlohmann::json rows = nlohmann::json::array();
    for (const CurvePoint& p : points) rows.push_back({{"u", p.u}, {curve_name(what), p.value}});
    return {{"what", curve_name(what)}, {"points", rows}};
}

}  // namespace unitdist::study_harness

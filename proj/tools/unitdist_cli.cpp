// Command-line surface over the unitdist library: density/cdf/hazard
// evaluation, numeric construction of conditional-sum laws, seeded sampling,
// dataset fitting, bias/MSE simulation, and curve emission.
//
// Exit codes: 0 success, 1 usage error (bad flags, unknown family/dataset,
// invalid arguments), 2 numeric or estimation failure.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <unitdist/unitdist.hpp>

namespace {

using unitdist::base_positive::PositiveDistSpec;
using unitdist::fgm_joint::JointSpec;
using unitdist::lcg_inference::Dataset;
using unitdist::study_harness::CurveKind;
using unitdist::study_harness::MlChoice;
using unitdist::study_harness::StudyConfig;
using unitdist::unit_families::FamilyKind;
using unitdist::unit_families::UnitFamily;

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos == text.size()) return v;
    } catch (...) {
    }
    throw std::invalid_argument("invalid number '" + text + "' in " + what);
}

// Marginal mini-grammar: exp:<theta> | gamma:<alpha>:<shape> | lindley:<theta>
PositiveDistSpec parse_marginal(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    const std::string bad = "invalid marginal '" + text +
                            "'; expected exp:<theta>, gamma:<alpha>:<shape>, or "
                            "lindley:<theta>";
    if (parts.empty()) throw std::invalid_argument(bad);
    const std::string kind = lower(parts[0]);
    if (kind == "exp" && parts.size() == 2)
        return PositiveDistSpec::exponential(parse_number(parts[1], text));
    if (kind == "gamma" && parts.size() == 3)
        return PositiveDistSpec::gamma(parse_number(parts[1], text),
                                       parse_number(parts[2], text));
    if (kind == "lindley" && parts.size() == 2)
        return PositiveDistSpec::lindley(parse_number(parts[1], text));
    throw std::invalid_argument(bad);
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("invalid parameter '" + kv + "'; expected key=value");
        const std::string key = lower(kv.substr(0, eq));
        if (out.count(key)) throw std::invalid_argument("duplicate parameter '" + key + "'");
        out[key] = parse_number(kv.substr(eq + 1), "parameter '" + key + "'");
    }
    return out;
}

double take(std::map<std::string, double>& params, const std::string& key,
            const std::string& family) {
    const auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("family '" + family + "' needs parameter '" + key + "'");
    const double v = it->second;
    params.erase(it);
    return v;
}

UnitFamily make_family(const std::string& name, std::map<std::string, double> params) {
    const std::string key = lower(name);
    UnitFamily fam = UnitFamily::uniform();
    if (key == "uniform") {
        fam = UnitFamily::uniform();
    } else if (key == "beta") {
        const double a = take(params, "a", key);
        fam = UnitFamily::beta(a, take(params, "b", key));
    } else if (key == "dist1") {
        fam = UnitFamily::dist1(take(params, "delta", key));
    } else if (key == "dist2") {
        const double theta = take(params, "theta", key);
        fam = UnitFamily::dist2(theta, take(params, "alpha", key));
    } else if (key == "dist3") {
        fam = UnitFamily::dist3();
    } else if (key == "dist4") {
        fam = UnitFamily::dist4(take(params, "delta", key));
    } else if (key == "dist5") {
        fam = UnitFamily::dist5();
    } else if (key == "dist6") {
        fam = UnitFamily::dist6(take(params, "delta", key));
    } else if (key == "dist7") {
        const double shape = take(params, "beta", key);
        fam = UnitFamily::dist7(shape, take(params, "delta", key));
    } else if (key == "lcg") {
        fam = UnitFamily::lcg(take(params, "beta", key));
    } else if (key == "toppleone") {
        fam = UnitFamily::topp_leone(take(params, "nu", key));
    } else {
        throw std::invalid_argument(
            "unknown family '" + name +
            "'; available: uniform, beta, dist1..dist7, lcg, toppleone");
    }
    if (!params.empty())
        throw std::invalid_argument("family '" + key + "' does not take parameter '" +
                                    params.begin()->first + "'");
    return fam;
}

Dataset load_dataset(const std::string& spec) {
    const std::string key = lower(spec);
    if (key == "sc16" || key == "p3") return unitdist::study_harness::builtin_dataset(spec);
    if (!std::filesystem::exists(spec))
        throw std::out_of_range("unknown dataset '" + spec +
                                "'; available: SC16, P3, or a readable file path");
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open dataset file '" + spec + "'");
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        const std::string tok = line.substr(first, last - first + 1);
        if (tok.find_first_of(" \t") != std::string::npos)
            throw std::invalid_argument(spec + ":" + std::to_string(lineno) +
                                        ": expected one value per line");
        values.push_back(parse_number(tok, spec + ":" + std::to_string(lineno)));
    }
    return unitdist::lcg_inference::make_dataset(
        std::filesystem::path(spec).stem().string(), std::move(values));
}

CurveKind parse_what(const std::string& what) {
    const std::string key = lower(what);
    if (key == "pdf") return CurveKind::pdf;
    if (key == "cdf") return CurveKind::cdf;
    if (key == "hazard") return CurveKind::hazard;
    throw std::invalid_argument("--what must be pdf, cdf, or hazard");
}

MlChoice parse_ml(const std::string& ml) {
    const std::string key = lower(ml);
    if (key == "both") return MlChoice::both;
    if (key == "exact") return MlChoice::exact;
    // "paper" is accepted as a quiet legacy alias for the quadratic equation
    if (key == "quadratic" || key == "paper") return MlChoice::quadratic;
    throw std::invalid_argument("--mle must be 'exact' or 'quadratic'");
}

unitdist::lcg_inference::EstimationMethod parse_estimator(const std::string& name) {
    const std::string key = lower(name);
    if (key == "mom") return unitdist::lcg_inference::EstimationMethod::mom;
    if (key == "ml-quadratic" || key == "ml_quadratic" || key == "quadratic")
        return unitdist::lcg_inference::EstimationMethod::ml_quadratic;
    if (key == "ml-exact" || key == "ml_exact" || key == "exact")
        return unitdist::lcg_inference::EstimationMethod::ml_exact;
    throw std::invalid_argument("unknown estimator '" + name +
                                "'; available: mom, ml-quadratic, ml-exact");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << text;
}

std::string fmt7(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.7f", x);
    return buf;
}

double hazard_of(const UnitFamily& fam, double u) {
    if (fam.kind() == FamilyKind::lcg)
        return unitdist::lcg_inference::lcg_hazard(fam.param1(), u);
    if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("hazard requires u in [0, 1)");
    return unitdist::unit_families::family_pdf(fam, u) /
           (1.0 - unitdist::unit_families::family_cdf(fam, u));
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("UNITDIST_SEED")) {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) return v;
        } catch (...) {
        }
        throw std::invalid_argument("UNITDIST_SEED is not a valid unsigned integer");
    }
    return 1;
}

struct EvalArgs {
    std::string family;
    std::vector<std::string> params;
    double u = 0.0;
    std::string what = "pdf";
    std::string out;
};

struct ConstructArgs {
    std::string margx, margy;
    double fgm_alpha = 0.0;
    bool has_alpha = false;
    std::size_t grid = 199;
    std::string format = "csv";
    std::string out;
};

struct SampleArgs {
    std::string family = "lcg";
    double beta = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    std::string out;
};

struct FitArgs {
    std::string dataset;
    std::string families = "lcg,toppleone";
    std::string mle = "both";
    std::string format = "csv";
    std::string out;
};

struct SimulateArgs {
    std::vector<std::size_t> sizes{20, 40, 60, 80, 100};
    std::vector<double> betas{2.30, 7.80, 15.00};
    std::size_t reps = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> estimators{"mom", "ml-quadratic"};
    std::string format = "csv";
    std::string out;
};

struct CurvesArgs {
    std::string family;
    std::vector<std::string> params;
    std::size_t grid = 199;
    std::string what = "pdf";
    std::string format = "csv";
    std::string out;
};

int run_eval(const EvalArgs& a) {
    const UnitFamily fam = make_family(a.family, parse_params(a.params));
    const CurveKind what = parse_what(a.what);
    double value = 0.0;
    switch (what) {
        case CurveKind::pdf: value = unitdist::unit_families::family_pdf(fam, a.u); break;
        case CurveKind::cdf: value = unitdist::unit_families::family_cdf(fam, a.u); break;
        case CurveKind::hazard: value = hazard_of(fam, a.u); break;
    }
    emit(fmt7(value) + "\n", a.out);
    return 0;
}

int run_construct(const ConstructArgs& a) {
    const PositiveDistSpec mx = parse_marginal(a.margx);
    const PositiveDistSpec my = parse_marginal(a.margy);
    if (a.grid < 1) throw std::invalid_argument("--grid must be at least 1");
    const JointSpec joint = a.has_alpha ? JointSpec::fgm(mx, my, a.fgm_alpha)
                                        : JointSpec::independent(mx, my);
    const unitdist::convolution_engine::NumericUnitDistribution dist(joint);
    std::vector<unitdist::study_harness::CurvePoint> points;
    points.reserve(a.grid);
    for (std::size_t i = 1; i <= a.grid; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(a.grid + 1);
        points.push_back({u, unitdist::convolution_engine::unit_pdf(dist, u)});
    }
    if (a.format == "json") {
        nlohmann::json j{{"fz1", dist.normalizer()},
                         {"points", unitdist::study_harness::to_json(points, CurveKind::pdf)["points"]}};
        emit(j.dump(2) + "\n", a.out);
        return 0;
    }
    std::string text = "# fz1=" + fmt7(dist.normalizer()) + "\nu,pdf\n";
    for (const auto& p : points) text += fmt7(p.u) + "," + fmt7(p.value) + "\n";
    emit(text, a.out);
    return 0;
}

int run_sample(const SampleArgs& a) {
    if (lower(a.family) != "lcg")
        throw std::invalid_argument("sampling is available for the 'lcg' family only");
    const auto values = unitdist::lcg_inference::lcg_sample(a.n, a.beta, a.seed);
    std::string text;
    text.reserve(values.size() * 20);
    char buf[40];
    for (const double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        text += buf;
    }
    emit(text, a.out);
    return 0;
}

int run_fit(const FitArgs& a) {
    const Dataset data = load_dataset(a.dataset);
    std::vector<FamilyKind> kinds;
    std::stringstream ss(a.families);
    for (std::string item; std::getline(ss, item, ',');) {
        const std::string key = lower(item);
        if (key == "lcg") kinds.push_back(FamilyKind::lcg);
        else if (key == "toppleone") kinds.push_back(FamilyKind::topp_leone);
        else
            throw std::invalid_argument("unknown family '" + item +
                                        "' for fitting; available: lcg, toppleone");
    }
    const auto report = unitdist::study_harness::fit_report(data, kinds, parse_ml(a.mle));
    for (const std::string& u : report.unfit)
        std::fprintf(stderr, "warning: %s\n", u.c_str());
    if (report.rows.empty())
        throw unitdist::estimation_error("no requested family could be fitted to '" +
                                         data.name + "'");
    emit(a.format == "json" ? unitdist::study_harness::to_json(report).dump(2) + "\n"
                              : unitdist::study_harness::to_csv(report),
         a.out);
    return 0;
}

int run_simulate(const SimulateArgs& a) {
    StudyConfig cfg;
    cfg.sample_sizes = a.sizes;
    cfg.beta_values = a.betas;
    cfg.replications = a.reps;
    cfg.base_seed = a.seed;
    cfg.estimators.clear();
    for (const std::string& e : a.estimators) cfg.estimators.push_back(parse_estimator(e));
    const auto report = unitdist::study_harness::run_bias_mse_study(cfg);
    emit(a.format == "json" ? unitdist::study_harness::to_json(report).dump(2) + "\n"
                              : unitdist::study_harness::to_csv(report),
         a.out);
    return 0;
}

int run_curves(const CurvesArgs& a) {
    const UnitFamily fam = make_family(a.family, parse_params(a.params));
    const CurveKind what = parse_what(a.what);
    const auto points = unitdist::study_harness::density_curves(fam, a.grid, what);
    emit(a.format == "json" ? unitdist::study_harness::to_json(points, what).dump(2) + "\n"
                              : unitdist::study_harness::to_csv(points, what),
         a.out);
    return 0;
}

int run_datasets_list(const std::string& out) {
    std::string text = "dataset,size\n";
    for (const auto& [name, size] : unitdist::study_harness::builtin_dataset_index())
        text += name + "," + std::to_string(size) + "\n";
    emit(text, out);
    return 0;
}

void add_format(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run(int argc, char** argv) {
    CLI::App app{"unitdist: continuous distributions on (0,1) built by conditioning a "
                 "positive pair (X, Y) on X + Y = 1"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate a family's pdf, cdf, or hazard");
    eval->add_option("--family", eval_args.family, "family name")->required();
    eval->add_option("--params", eval_args.params, "family parameters as key=value")
        ->delimiter(',');
    eval->add_option("--u", eval_args.u, "evaluation point in [0,1]")->required();
    eval->add_option("--what", eval_args.what, "pdf (default), cdf, or hazard");
    eval->add_option("--out", eval_args.out, "write to file instead of stdout");

    ConstructArgs con_args;
    auto* con = app.add_subcommand(
        "construct", "numerically construct the law of X given X+Y=1 and print its density");
    con->add_option("--margx", con_args.margx,
                    "marginal of X: exp:<theta>, gamma:<alpha>:<shape>, lindley:<theta>")
        ->required();
    con->add_option("--margy", con_args.margy, "marginal of Y (same grammar)")->required();
    con->add_option("--fgm-alpha", con_args.fgm_alpha,
                    "couple the pair with dependence parameter in [-1,1]")
        ->check(CLI::Range(-1.0, 1.0));
    con->add_option("--grid", con_args.grid, "number of interior grid points (default 199)");
    add_format(con, con_args.format);
    con->add_option("--out", con_args.out, "write to file instead of stdout");

    SampleArgs sam_args;
    sam_args.seed = default_seed();
    auto* sam = app.add_subcommand("sample", "draw seeded samples");
    sam->add_option("--family", sam_args.family, "family to sample (lcg)");
    sam->add_option("--beta", sam_args.beta, "shape parameter")->required();
    sam->add_option("--n", sam_args.n, "number of draws")->required();
    sam->add_option("--seed", sam_args.seed, "generator seed (default: UNITDIST_SEED or 1)");
    sam->add_option("--out", sam_args.out, "write to file instead of stdout");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "fit families to a dataset and rank by AIC");
    fit->add_option("--dataset", fit_args.dataset, "builtin name (SC16, P3) or file path")
        ->required();
    fit->add_option("--families", fit_args.families,
                    "comma-separated families: lcg, toppleone (default both)");
    fit->add_option("--mle", fit_args.mle,
                    "restrict the lcg likelihood equation: exact or quadratic");
    add_format(fit, fit_args.format);
    fit->add_option("--out", fit_args.out, "write to file instead of stdout");

    SimulateArgs sim_args;
    sim_args.seed = default_seed();
    auto* sim = app.add_subcommand("simulate", "run the bias/MSE sampling study");
    sim->add_option("--sizes", sim_args.sizes, "sample sizes")->delimiter(',');
    sim->add_option("--betas", sim_args.betas, "true shape values")->delimiter(',');
    sim->add_option("--reps", sim_args.reps, "replications per cell (default 1000)");
    sim->add_option("--seed", sim_args.seed, "base seed (default: UNITDIST_SEED or 1)");
    sim->add_option("--estimators", sim_args.estimators,
                    "estimators: mom, ml-quadratic, ml-exact")
        ->delimiter(',');
    add_format(sim, sim_args.format);
    sim->add_option("--out", sim_args.out, "write to file instead of stdout");

    CurvesArgs cur_args;
    auto* cur = app.add_subcommand("curves", "tabulate a family curve on a uniform grid");
    cur->add_option("--family", cur_args.family, "family name")->required();
    cur->add_option("--params", cur_args.params, "family parameters as key=value")
        ->delimiter(',');
    cur->add_option("--grid", cur_args.grid, "number of interior grid points (default 199)");
    cur->add_option("--what", cur_args.what, "pdf (default), cdf, or hazard");
    add_format(cur, cur_args.format);
    cur->add_option("--out", cur_args.out, "write to file instead of stdout");

    auto* ds = app.add_subcommand("datasets", "built-in dataset registry");
    ds->require_subcommand(1);
    std::string ds_out;
    auto* ds_list = ds->add_subcommand("list", "list built-in datasets");
    ds_list->add_option("--out", ds_out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (app.got_subcommand(eval)) return run_eval(eval_args);
    if (app.got_subcommand(con)) {
        con_args.has_alpha = con->count("--fgm-alpha") > 0;
        return run_construct(con_args);
    }
    if (app.got_subcommand(sam)) return run_sample(sam_args);
    if (app.got_subcommand(fit)) return run_fit(fit_args);
    if (app.got_subcommand(sim)) return run_simulate(sim_args);
    if (app.got_subcommand(cur)) return run_curves(cur_args);
    if (app.got_subcommand(ds)) return run_datasets_list(ds_out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const unitdist::numeric_error& e) {
        std::fprintf(stderr, "numeric failure: %s (achieved error %g)\n", e.what(),
                     e.achieved_error());
        return 2;
    } catch (const unitdist::estimation_error& e) {
        std::fprintf(stderr, "estimation failure: %s\n", e.what());
        return 2;
    } catch (const std::range_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\nusage: run '%s --help' or '%s <subcommand> --help'\n",
                     e.what(), argv[0], argv[0]);
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\nusage: run '%s --help' or '%s <subcommand> --help'\n",
                     e.what(), argv[0], argv[0]);
        return 1;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\nusage: run '%s --help' or '%s <subcommand> --help'\n",
                     e.what(), argv[0], argv[0]);
        return 1;
    }
}

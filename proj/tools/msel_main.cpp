// Command-line front end: experiment runners emitting plot-ready CSV on
// standard output, plus a property-verification command.
//
// Exit codes: 0 success, 1 computation/verification failure, 2 usage or
// configuration error.  All randomness is controlled by --seed (default 42).

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "msel/crossval.hpp"
#include "msel/dataset.hpp"
#include "msel/ensemble.hpp"
#include "msel/errors.hpp"
#include "msel/mathutil.hpp"
#include "msel/regularize.hpp"
#include "msel/risk.hpp"
#include "msel/rng.hpp"
#include "msel/smoothers.hpp"
#include "msel/verify.hpp"

namespace {

using namespace msel;

// 12 significant digits: enough headroom for 1e-8..1e-10 oracle comparisons
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void emit_row(std::initializer_list<double> vals) {
    bool first = true;
    for (double v : vals) {
        if (!first) std::cout << ',';
        std::cout << fmt(v);
        first = false;
    }
    std::cout << '\n';
}

std::string trim_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// flat key=value lines, '#' comments; ordering preserved
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> items;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim_ws(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidArgument("config line " + std::to_string(line_no) +
                                  " is not key=value: " + t);
        items.emplace_back(trim_ws(t.substr(0, eq)), trim_ws(t.substr(eq + 1)));
    }
    return items;
}

void require_option(const std::string& value, const std::string& flag) {
    if (value.empty()) throw InvalidArgument(flag + " is required");
}

LabelColumn parse_label(const std::string& spec, const std::string& path) {
    if (spec.empty()) {  // default: last column
        std::ifstream in(path);
        if (!in) throw InvalidArgument("cannot open file: " + path);
        std::string header;
        if (!std::getline(in, header)) throw InvalidArgument("file has no header row: " + path);
        int cols = 1;
        for (char ch : header)
            if (ch == ',') ++cols;
        return cols - 1;
    }
    int idx = 0;
    auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), idx);
    if (ec == std::errc{} && ptr == spec.data() + spec.size()) return idx;
    return spec;
}

struct ModelChoice {
    std::string name = "ols";  // ols | ridge | mean
    double alpha = 1.0;
};

RegressionLearner learner_for(const ModelChoice& m) {
    if (m.name == "mean")
        return [](const Dataset& train) -> RegressionModel {
            double mu = train.labels().mean();
            return [mu](const Eigen::VectorXd&) { return mu; };
        };
    double alpha = m.name == "ridge" ? m.alpha : 0.0;
    return [alpha](const Dataset& train) -> RegressionModel {
        Eigen::VectorXd beta =
            ridge_solve(design_with_intercept(train.features()), train.labels(), alpha).beta;
        return [beta](const Eigen::VectorXd& x) {
            return beta(0) + beta.tail(beta.size() - 1).dot(x);
        };
    };
}

LinearSmoother smoother_for(const ModelChoice& m, const Dataset& ds) {
    if (m.name == "mean") return mean_hat(ds.n());
    Eigen::MatrixXd design = design_with_intercept(ds.features());
    return m.name == "ridge" ? ridge_hat(design, m.alpha) : ols_hat(design);
}

// ---------------------------------------------------------------- cv

struct CvArgs {
    std::string input, label, method;
    ModelChoice model;
    int k = 5;
    std::uint64_t seed = 42;
};

int cmd_cv(const CvArgs& a) {
    Dataset ds = load_csv(a.input, parse_label(a.label, a.input));

    // summary row (index -1): mean CV error for kfold; total squared error
    // for the leave-one-out family so loocv, shortcut, and gcv agree
    std::vector<std::pair<double, double>> rows;
    if (a.method == "kfold") {
        CvResult r = kfold_cv(ds, a.k, learner_for(a.model), a.seed);
        for (std::size_t i = 0; i < r.fold_errors.size(); ++i)
            rows.emplace_back(static_cast<double>(i), r.fold_errors[i]);
        rows.emplace_back(-1.0, r.mean_error);
    } else if (a.method == "loocv") {
        CvResult r = loocv(ds, learner_for(a.model));
        double sse = 0.0;
        for (std::size_t i = 0; i < r.fold_errors.size(); ++i) {
            rows.emplace_back(static_cast<double>(i), r.fold_errors[i]);
            sse += r.fold_errors[i];
        }
        rows.emplace_back(-1.0, sse);
    } else if (a.method == "shortcut") {
        LoocvShortcut sc = loocv_shortcut(ds.labels(), smoother_for(a.model, ds));
        for (Eigen::Index i = 0; i < sc.residuals.size(); ++i)
            rows.emplace_back(static_cast<double>(i), sc.residuals(i) * sc.residuals(i));
        rows.emplace_back(-1.0, sc.sse);
    } else {  // gcv
        LinearSmoother sm = smoother_for(a.model, ds);
        double total = gcv(ds.labels(), sm);
        Eigen::VectorXd yhat = predict(sm, ds.labels());
        double denom = 1.0 - effective_dof(sm) / static_cast<double>(ds.n());
        for (Eigen::Index i = 0; i < ds.n(); ++i) {
            double r = (ds.labels()(i) - yhat(i)) / denom;
            rows.emplace_back(static_cast<double>(i), r * r);
        }
        rows.emplace_back(-1.0, total);
    }

    std::cout << "fold_or_index,error\n";
    for (const auto& [idx, err] : rows) emit_row({idx, err});
    return 0;
}

// ---------------------------------------------------------------- curve

struct CurveArgs {
    int n = 40, n_val = 40, max_degree = 10;
    double sigma = 0.3, amplitude = 1.0, frequency = 2.0 * M_PI;
    std::uint64_t seed = 42;
};

int cmd_curve(const CurveArgs& a) {
    SyntheticSpec spec;
    spec.true_function = Sine{a.amplitude, a.frequency};
    spec.noise_sigma = a.sigma;
    spec.domain = {{0.0, 1.0}};
    Dataset train = generate_synthetic(spec, a.n, mix_seed(a.seed, 0));
    Dataset val = generate_synthetic(spec, a.n_val, mix_seed(a.seed, 1));
    double sigma2 = a.sigma * a.sigma;

    // design variable rescaled to [-1, 1]; high-degree fits on [0, 1] would
    // trip the conditioning guard long before degree 10
    Eigen::VectorXd t_train = (2.0 * train.features().col(0).array() - 1.0).matrix();
    Eigen::VectorXd t_val = (2.0 * val.features().col(0).array() - 1.0).matrix();

    std::cout << "complexity,err,Err_validation,Err_sure\n";
    for (int degree = 0; degree <= a.max_degree; ++degree) {
        try {
            Eigen::MatrixXd design = polynomial_design(t_train, degree);
            LinearSmoother sm = ols_hat(design);
            Eigen::VectorXd beta = ols_solve(design, train.labels()).beta;
            double err = (train.labels() - design * beta).squaredNorm();
            double err_sure = sure_err(err, train.n(), sigma2, effective_dof(sm));
            Eigen::VectorXd val_pred = polynomial_design(t_val, degree) * beta;
            double err_val = test_err((val.labels() - val_pred).squaredNorm(), val.n(), sigma2);
            emit_row({static_cast<double>(degree), err, err_val, err_sure});
        } catch (const ComputationError& e) {
            // singular degrees are reported, not fatal, and the row is left
            // out so the emitted file stays loadable
            std::cerr << "degree " << degree << " skipped: " << e.what() << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------- boost

struct BoostArgs {
    std::string input, label, convention = "full";
    int k = 50;
};

int cmd_boost(const BoostArgs& a) {
    Dataset ds = load_csv(a.input, parse_label(a.label, a.input));
    AlphaConvention conv =
        a.convention == "half" ? AlphaConvention::half : AlphaConvention::full;
    BoostModel model = adaboost_train(ds, a.k, conv);

    Eigen::VectorXd scores = Eigen::VectorXd::Zero(ds.n());
    double log_bound = 0.0;
    std::cout << "round,weighted_error,alpha,train_error,bound_product\n";
    for (int j = 0; j < a.k; ++j) {
        double L = model.losses(j);
        for (Eigen::Index i = 0; i < ds.n(); ++i)
            scores(i) += model.alphas(j) * stump_predict(model.members[static_cast<std::size_t>(j)],
                                                         ds.instance(i).features);
        int wrong = 0;
        for (Eigen::Index i = 0; i < ds.n(); ++i)
            if (sign_pm(scores(i)) != ds.label(i)) ++wrong;
        log_bound += std::log(2.0) + 0.5 * (std::log(L) + std::log1p(-L));
        emit_row({static_cast<double>(j + 1), L, model.alphas(j),
                  static_cast<double>(wrong) / static_cast<double>(ds.n()), std::exp(log_bound)});
    }
    return 0;
}

// ---------------------------------------------------------------- bag

struct BagArgs {
    double s = 1.0, c = 0.0;
    int k = 10, reps = 100000;
    std::uint64_t seed = 42;
};

int cmd_bag(const BagArgs& a) {
    std::cout << "k,empirical_var,theory_var\n";
    for (int k = 1; k <= a.k; ++k) {
        BaggingMcReport rep =
            bagging_variance_mc(a.s, a.c, k, a.reps, mix_seed(a.seed, static_cast<std::uint64_t>(k)));
        emit_row({static_cast<double>(k), rep.empirical_var, rep.theory_var});
    }
    return 0;
}

// ---------------------------------------------------------------- lasso / ridge / ols

struct FitArgs {
    std::string input, label;
    double alpha = 1.0;
    bool no_intercept = false, no_standardize = false;
    double tol = 1e-10;
    int max_iter = 100000;
};

void emit_beta(const Eigen::VectorXd& beta) {
    std::cout << "index,value\n";
    for (Eigen::Index j = 0; j < beta.size(); ++j) emit_row({static_cast<double>(j), beta(j)});
}

int cmd_lasso(const FitArgs& a) {
    Dataset ds = load_csv(a.input, parse_label(a.label, a.input));
    LassoOptions opts;
    opts.add_intercept = !a.no_intercept;
    opts.standardize = !a.no_standardize;
    opts.tol = a.tol;
    opts.max_iter = a.max_iter;
    RegressionFit fit = lasso_cd(ds.features(), ds.labels(), a.alpha, opts);
    emit_beta(fit.beta);
    emit_row({-1.0, static_cast<double>(fit.iterations)});
    emit_row({-2.0, fit.converged ? 1.0 : 0.0});
    emit_row({-3.0, fit.objective_trace.back()});
    return 0;
}

int cmd_linfit(const FitArgs& a, bool ridge) {
    Dataset ds = load_csv(a.input, parse_label(a.label, a.input));
    Eigen::MatrixXd design = design_with_intercept(ds.features());
    RegressionFit fit = ridge ? ridge_solve(design, ds.labels(), a.alpha)
                              : ols_solve(design, ds.labels());
    emit_beta(fit.beta);
    return 0;
}

// ---------------------------------------------------------------- sure

struct SureArgs {
    std::string input, label;
    ModelChoice model;
    double sigma2 = -1.0;  // < 0 means estimate from the model's residuals
};

int cmd_sure(const SureArgs& a) {
    Dataset ds = load_csv(a.input, parse_label(a.label, a.input));
    LinearSmoother sm = smoother_for(a.model, ds);
    Eigen::VectorXd fitted = predict(sm, ds.labels());
    NoiseModel noise = a.sigma2 >= 0.0
                           ? NoiseModel{a.sigma2, NoiseModel::Provenance::known}
                           : estimate_noise_variance(ds.labels(), fitted);
    RiskReport rep = sure_report(ds.labels(), fitted, effective_dof(sm), noise);
    std::cout << "n,err,sigma2,df,Err\n";
    emit_row({static_cast<double>(rep.n_or_m), rep.err, rep.sigma2, rep.df, rep.Err});
    return 0;
}

// ---------------------------------------------------------------- bvdart

struct BvdartArgs {
    int reps = 50;
    std::uint64_t seed = 42;
};

// Four estimator regimes around a bullseye at the origin: every combination
// of {low, high} bias x {low, high} variance.  Scatter rows carry the draws;
// row (-1-r) summarizes regime r as (bias distance, total variance).
int cmd_bvdart(const BvdartArgs& a) {
    const double bias_len[4] = {0.0, 0.0, 1.5, 1.5};
    const double sd[4] = {0.1, 0.5, 0.1, 0.5};
    const double off = 1.0 / std::sqrt(2.0);

    std::cout << "regime,x,y\n";
    std::vector<std::array<double, 2>> summaries;
    for (int r = 0; r < 4; ++r) {
        auto rng = make_rng(mix_seed(a.seed, static_cast<std::uint64_t>(r)));
        std::normal_distribution<double> g(0.0, sd[r]);
        Eigen::VectorXd xs(a.reps), ys(a.reps);
        for (int i = 0; i < a.reps; ++i) {
            xs(i) = bias_len[r] * off + g(rng);
            ys(i) = bias_len[r] * off + g(rng);
            emit_row({static_cast<double>(r), xs(i), ys(i)});
        }
        MomentReport mx = moment_report(xs, 0.0), my = moment_report(ys, 0.0);
        summaries.push_back({std::hypot(mx.bias, my.bias), mx.variance + my.variance});
    }
    for (int r = 0; r < 4; ++r)
        emit_row({static_cast<double>(-1 - r), summaries[static_cast<std::size_t>(r)][0],
                  summaries[static_cast<std::size_t>(r)][1]});
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;  // empty = all groups
    std::uint64_t seed = 42;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<verify::SuiteResult> suites =
        a.suite.empty() ? verify::run_all(a.seed) : verify::run_group(a.suite, a.seed);
    bool all_pass = true;
    for (const auto& suite : suites) {
        for (const auto& c : suite.checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << suite.name << '.' << c.name
                      << " measured=" << fmt(c.measured) << " tolerance=" << fmt(c.tolerance)
                      << '\n';
            all_pass = all_pass && c.pass;
        }
    }
    std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    return all_pass ? 0 : 1;
}

// One path shared across subcommands; only the parsed subcommand can set it.
std::string g_config_path;

void add_config(CLI::App* cmd) {
    cmd->add_option("--config", g_config_path,
                    "flat key=value config file; command-line flags take precedence");
}

// Merges config entries into the parsed subcommand by reparsing with the
// config-supplied pairs injected ahead of the original arguments.  Keys whose
// option was already given on the command line are dropped, so explicit flags
// always win.  Returns an exit code, or -1 to continue into dispatch.
int apply_config(CLI::App& app, int argc, char** argv) {
    CLI::App* active = app.get_subcommands().front();
    std::vector<std::string> extra;
    for (const auto& [key, value] : read_config_file(g_config_path)) {
        CLI::Option* opt = active->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw InvalidArgument("unknown config key for '" + active->get_name() + "': " + key);
        if (opt->count() > 0) continue;
        if (opt->get_expected_min() == 0) {
            // flag option: accept the usual boolean spellings
            if (value == "true" || value == "1" || value == "yes" || value == "on") {
                extra.push_back("--" + key);
            } else if (value != "false" && value != "0" && value != "no" && value != "off") {
                throw InvalidArgument("config key '" + key + "' expects a boolean, got: " + value);
            }
        } else {
            extra.push_back("--" + key);
            extra.push_back(value);
        }
    }
    if (extra.empty()) return -1;
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc) + extra.size());
    args.emplace_back(argv[0]);
    args.push_back(active->get_name());
    for (const std::string& a : extra) args.push_back(a);
    for (int i = 2; i < argc; ++i) args.emplace_back(argv[i]);
    std::vector<char*> ptrs;
    ptrs.reserve(args.size());
    for (std::string& a : args) ptrs.push_back(a.data());
    app.clear();
    try {
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return -1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"model selection and ensemble learning toolkit"};
    app.require_subcommand(1);

    CvArgs cv;
    auto* cv_cmd = app.add_subcommand("cv", "cross-validation error estimates for one dataset");
    cv_cmd->add_option("--input", cv.input, "input CSV path");
    cv_cmd->add_option("--label", cv.label, "label column name or 0-based index (default: last)");
    cv_cmd->add_option("--method", cv.method, "kfold | loocv | shortcut | gcv")
        ->check(CLI::IsMember({"kfold", "loocv", "shortcut", "gcv"}));
    cv_cmd->add_option("--model", cv.model.name, "ols | ridge | mean")
        ->check(CLI::IsMember({"ols", "ridge", "mean"}));
    cv_cmd->add_option("--alpha", cv.model.alpha, "ridge penalty weight");
    cv_cmd->add_option("--k", cv.k, "fold count for --method kfold");
    cv_cmd->add_option("--seed", cv.seed, "fold-assignment seed");
    add_config(cv_cmd);

    CurveArgs curve;
    auto* curve_cmd =
        app.add_subcommand("curve", "training and estimated true error across polynomial degrees");
    curve_cmd->add_option("--n", curve.n, "training sample size")->check(CLI::PositiveNumber);
    curve_cmd->add_option("--n-val", curve.n_val, "validation sample size")
        ->check(CLI::PositiveNumber);
    curve_cmd->add_option("--max-degree", curve.max_degree, "largest polynomial degree")
        ->check(CLI::NonNegativeNumber);
    curve_cmd->add_option("--sigma", curve.sigma, "label noise standard deviation")
        ->check(CLI::NonNegativeNumber);
    curve_cmd->add_option("--amplitude", curve.amplitude, "sine amplitude");
    curve_cmd->add_option("--frequency", curve.frequency, "sine frequency");
    curve_cmd->add_option("--seed", curve.seed, "data generation seed");
    add_config(curve_cmd);

    BoostArgs boost;
    auto* boost_cmd = app.add_subcommand("boost", "adaptive stump boosting with per-round bounds");
    boost_cmd->add_option("--input", boost.input, "input CSV path (labels must be -1/+1)");
    boost_cmd->add_option("--label", boost.label, "label column name or 0-based index");
    boost_cmd->add_option("--k", boost.k, "boosting rounds")->check(CLI::PositiveNumber);
    boost_cmd->add_option("--convention", boost.convention, "full | half vote-weight scale")
        ->check(CLI::IsMember({"full", "half"}));
    add_config(boost_cmd);

    BagArgs bag;
    auto* bag_cmd =
        app.add_subcommand("bag", "variance of averaged correlated errors, empirical vs theory");
    bag_cmd->add_option("--s", bag.s, "per-model error variance")->check(CLI::NonNegativeNumber);
    bag_cmd->add_option("--c", bag.c, "pairwise error covariance");
    bag_cmd->add_option("--k", bag.k, "largest ensemble size")->check(CLI::PositiveNumber);
    bag_cmd->add_option("--reps", bag.reps, "Monte Carlo replicates per row")
        ->check(CLI::PositiveNumber);
    bag_cmd->add_option("--seed", bag.seed, "replicate seed");
    add_config(bag_cmd);

    FitArgs lasso;
    auto* lasso_cmd = app.add_subcommand("lasso", "l1-penalized linear fit by coordinate descent");
    lasso_cmd->add_option("--input", lasso.input, "input CSV path");
    lasso_cmd->add_option("--label", lasso.label, "label column name or 0-based index");
    lasso_cmd->add_option("--alpha", lasso.alpha, "l1 penalty weight")
        ->check(CLI::NonNegativeNumber);
    lasso_cmd->add_flag("--no-intercept", lasso.no_intercept, "fit without an intercept");
    lasso_cmd->add_flag("--no-standardize", lasso.no_standardize,
                        "skip internal feature standardization");
    lasso_cmd->add_option("--tol", lasso.tol, "coordinate-change stopping tolerance")
        ->check(CLI::PositiveNumber);
    lasso_cmd->add_option("--max-iter", lasso.max_iter, "maximum full cycles")
        ->check(CLI::PositiveNumber);
    add_config(lasso_cmd);

    FitArgs ridge;
    auto* ridge_cmd = app.add_subcommand("ridge", "l2-penalized linear fit");
    ridge_cmd->add_option("--input", ridge.input, "input CSV path");
    ridge_cmd->add_option("--label", ridge.label, "label column name or 0-based index");
    ridge_cmd->add_option("--alpha", ridge.alpha, "l2 penalty weight")
        ->check(CLI::NonNegativeNumber);
    add_config(ridge_cmd);

    FitArgs ols;
    auto* ols_cmd = app.add_subcommand("ols", "ordinary least squares fit");
    ols_cmd->add_option("--input", ols.input, "input CSV path");
    ols_cmd->add_option("--label", ols.label, "label column name or 0-based index");
    add_config(ols_cmd);

    SureArgs sure;
    auto* sure_cmd =
        app.add_subcommand("sure", "true-error estimate from training error and model sensitivity");
    sure_cmd->add_option("--input", sure.input, "input CSV path");
    sure_cmd->add_option("--label", sure.label, "label column name or 0-based index");
    sure_cmd->add_option("--model", sure.model.name, "ols | ridge | mean")
        ->check(CLI::IsMember({"ols", "ridge", "mean"}));
    sure_cmd->add_option("--alpha", sure.model.alpha, "ridge penalty weight");
    sure_cmd->add_option("--sigma2", sure.sigma2,
                         "known noise variance (default: estimated from residuals)")
        ->check(CLI::NonNegativeNumber);
    add_config(sure_cmd);

    BvdartArgs bvdart;
    auto* bvdart_cmd =
        app.add_subcommand("bvdart", "bias/variance scatter for four estimator regimes");
    bvdart_cmd->add_option("--reps", bvdart.reps, "draws per regime")->check(CLI::PositiveNumber);
    bvdart_cmd->add_option("--seed", bvdart.seed, "draw seed");
    add_config(bvdart_cmd);

    VerifyArgs verify_args;
    auto* verify_cmd =
        app.add_subcommand("verify", "run the invariant and oracle suites; exit 0 iff all pass");
    verify_cmd->add_option("--suite", verify_args.suite,
                           "restrict to one group: risk | crossval | regularize | ensemble")
        ->check(CLI::IsMember({"risk", "crossval", "regularize", "ensemble"}));
    verify_cmd->add_option("--seed", verify_args.seed, "suite seed");
    add_config(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!g_config_path.empty()) {
            int code = apply_config(app, argc, argv);
            if (code >= 0) return code;
        }
        if (cv_cmd->parsed()) {
            require_option(cv.input, "--input");
            require_option(cv.method, "--method");
            return cmd_cv(cv);
        }
        if (curve_cmd->parsed()) return cmd_curve(curve);
        if (boost_cmd->parsed()) {
            require_option(boost.input, "--input");
            return cmd_boost(boost);
        }
        if (bag_cmd->parsed()) return cmd_bag(bag);
        if (lasso_cmd->parsed()) {
            require_option(lasso.input, "--input");
            return cmd_lasso(lasso);
        }
        if (ridge_cmd->parsed()) {
            require_option(ridge.input, "--input");
            return cmd_linfit(ridge, true);
        }
        if (ols_cmd->parsed()) {
            require_option(ols.input, "--input");
            return cmd_linfit(ols, false);
        }
        if (sure_cmd->parsed()) {
            require_option(sure.input, "--input");
            return cmd_sure(sure);
        }
        if (bvdart_cmd->parsed()) return cmd_bvdart(bvdart);
        if (verify_cmd->parsed()) return cmd_verify(verify_args);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ComputationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

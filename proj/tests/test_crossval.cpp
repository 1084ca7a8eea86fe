#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "msel/crossval.hpp"
#include "msel/dataset.hpp"
#include "msel/regularize.hpp"
#include "msel/rng.hpp"
#include "msel/smoothers.hpp"

using namespace msel;

namespace {

RegressionLearner mean_learner() {
    return [](const Dataset& train) -> RegressionModel {
        double m = train.labels().mean();
        return [m](const Eigen::VectorXd&) { return m; };
    };
}

RegressionLearner ols_learner() {
    return [](const Dataset& train) -> RegressionModel {
        RegressionFit fit = ols_solve(design_with_intercept(train.features()), train.labels());
        Eigen::VectorXd beta = fit.beta;
        return [beta](const Eigen::VectorXd& x) {
            double v = beta(0);
            for (Eigen::Index j = 0; j < x.size(); ++j) v += beta(j + 1) * x(j);
            return v;
        };
    };
}

Dataset poly_dataset(int n, std::uint64_t seed) {
    SyntheticSpec spec;
    spec.true_function = Polynomial{{1.0, -2.0, 0.5}};
    spec.noise_sigma = 0.4;
    spec.domain = {{-1.0, 1.0}};
    return generate_synthetic(spec, n, seed);
}

}  // namespace

TEST_CASE("mse loss averages squared residuals") {
    Eigen::VectorXd pred(2), lab(2);
    pred << 1.0, 2.0;
    lab << 3.0, 2.0;
    CHECK(mse_loss(pred, lab) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(mse_loss(pred, Eigen::VectorXd(3)), InvalidArgument);
    CHECK_THROWS_AS(mse_loss(Eigen::VectorXd(0), Eigen::VectorXd(0)), InvalidArgument);
}

TEST_CASE("leave-one-out on two points with the mean predictor") {
    Eigen::MatrixXd X(2, 1);
    X << 0.0, 1.0;
    Eigen::VectorXd y(2);
    y << 1.0, 3.0;
    CvResult res = loocv(Dataset(X, y), mean_learner());
    REQUIRE(res.fold_errors.size() == 2);
    // holding out either point leaves the other as a constant prediction,
    // so each fold error is (1 - 3)^2 = 4
    CHECK(res.fold_errors[0] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(res.fold_errors[1] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(res.mean_error == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(res.k == 2);
}

TEST_CASE("K = N folding is leave-one-out up to fold order") {
    Dataset ds = poly_dataset(12, 3);
    CvResult lo = loocv(ds, ols_learner());
    CvResult kf = kfold_cv(ds, 12, ols_learner(), 99);

    // every fold holds out exactly one instance and trains on the same
    // ascending complement, so the error multisets match bitwise
    std::vector<double> a = lo.fold_errors;
    std::vector<double> b = kf.fold_errors;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(lo.mean_error == kf.mean_error);  // mean over a sorted copy
}

TEST_CASE("fold errors depend on the seed only through the partition") {
    Dataset ds = poly_dataset(15, 5);
    CvResult r1 = kfold_cv(ds, 5, ols_learner(), 1);
    CvResult r2 = kfold_cv(ds, 5, ols_learner(), 1);
    CHECK(r1.fold_errors == r2.fold_errors);
    CHECK(r1.mean_error == r2.mean_error);
}

TEST_CASE("the learner never sees a held-out instance") {
    const int N = 10, K = 3;
    Dataset ds = poly_dataset(N, 7);

    // audit learner: records the multiset of labels in every training set
    std::vector<std::multiset<double>> calls;
    RegressionLearner audit = [&calls](const Dataset& train) -> RegressionModel {
        std::multiset<double> seen;
        for (Eigen::Index i = 0; i < train.n(); ++i) seen.insert(train.label(i));
        calls.push_back(seen);
        double m = train.labels().mean();
        return [m](const Eigen::VectorXd&) { return m; };
    };

    const std::uint64_t seed = 21;
    kfold_cv(ds, K, audit, seed);
    auto folds = kfold_partitions(ds, K, seed);  // same seed, same folds
    REQUIRE(calls.size() == folds.size());

    for (std::size_t f = 0; f < folds.size(); ++f) {
        CHECK(calls[f].size() == static_cast<std::size_t>(N) - folds[f].size());
        for (int i : folds[f]) CHECK(calls[f].count(ds.label(i)) == 0);
    }
}

TEST_CASE("shortcut residuals match deleted fits without retraining") {
    const int n = 9;
    Dataset ds = poly_dataset(n, 11);
    Eigen::MatrixXd X = polynomial_design(ds.features().col(0), 2);
    LinearSmoother sm = ols_hat(X);
    LoocvShortcut sc = loocv_shortcut(ds.labels(), sm);

    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> keep;
        for (int j = 0; j < n; ++j)
            if (j != i) keep.push_back(j);
        Dataset rest = ds.subset(keep);
        RegressionFit fit = ols_solve(polynomial_design(rest.features().col(0), 2), rest.labels());
        double pred = fit.beta(0) + fit.beta(1) * ds.features()(i, 0) +
                      fit.beta(2) * ds.features()(i, 0) * ds.features()(i, 0);
        double deleted = ds.label(i) - pred;
        CHECK(sc.residuals(i) == doctest::Approx(deleted).epsilon(1e-8));
        sse += deleted * deleted;
    }
    CHECK(sc.sse == doctest::Approx(sse).epsilon(1e-8));
}

TEST_CASE("interpolating smoothers are rejected by the shortcut") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
    LinearSmoother sm = ols_hat(X);  // every diagonal entry is 1
    Eigen::VectorXd y(4);
    y << 1, 2, 3, 4;
    CHECK_THROWS_AS(loocv_shortcut(y, sm), ComputationError);
    CHECK_THROWS_AS(gcv(y, sm), ComputationError);
    CHECK_THROWS_AS(loocv_shortcut(Eigen::VectorXd(3), mean_hat(4)), InvalidArgument);
}

TEST_CASE("generalized score equals the shortcut under constant leverage") {
    Eigen::VectorXd y(6);
    y << 2.0, -1.0, 0.5, 3.0, 1.0, -2.0;
    LinearSmoother sm = mean_hat(6);
    double g = gcv(y, sm);
    double s = loocv_shortcut(y, sm).sse;
    CHECK(g == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("validation tuning scores the validation part only") {
    const int N = 20;
    Dataset ds = poly_dataset(N, 13);
    Split sp = split_holdout(ds, 0.5, 0.3, 0.2, 9);

    // fingerprint the inputs each trained model is asked to predict
    std::vector<double> predicted_inputs;
    auto factory = [&predicted_inputs](double alpha) -> RegressionLearner {
        return [&predicted_inputs, alpha](const Dataset& train) -> RegressionModel {
            RegressionFit fit =
                ridge_solve(design_with_intercept(train.features()), train.labels(), alpha);
            Eigen::VectorXd beta = fit.beta;
            return [&predicted_inputs, beta](const Eigen::VectorXd& x) {
                predicted_inputs.push_back(x(0));
                double v = beta(0);
                for (Eigen::Index j = 0; j < x.size(); ++j) v += beta(j + 1) * x(j);
                return v;
            };
        };
    };

    std::vector<double> grid = {0.01, 0.1, 1.0};
    TuneResult res = tune_with_validation(ds, sp, grid, factory);
    REQUIRE(res.val_errors.size() == grid.size());
    CHECK(std::count(grid.begin(), grid.end(), res.best_param) == 1);

    std::set<double> val_inputs, test_inputs;
    for (int i : sp.val_idx) val_inputs.insert(ds.features()(i, 0));
    for (int i : sp.test_idx) test_inputs.insert(ds.features()(i, 0));
    for (double x : predicted_inputs) {
        CHECK(val_inputs.count(x) == 1);
        CHECK(test_inputs.count(x) == 0);
    }
}

TEST_CASE("earliest grid entry wins validation ties") {
    Dataset ds = poly_dataset(10, 15);
    Split sp = split_holdout(ds, 0.6, 0.2, 0.2, 2);
    // the learner ignores the parameter, so all grid entries tie
    auto factory = [](double) -> RegressionLearner { return mean_learner(); };
    TuneResult res = tune_with_validation(ds, sp, {5.0, 1.0, 3.0}, factory);
    CHECK(res.best_param == 5.0);
    CHECK(res.val_errors[0] == res.val_errors[1]);
}

TEST_CASE("patience-based stopping fires once the best value is old enough") {
    StoppingMonitor mon(2);
    CHECK_FALSE(mon.observe(1.0));
    CHECK_FALSE(mon.observe(0.5));
    CHECK_FALSE(mon.observe(0.6));
    CHECK(mon.observe(0.7));  // best (0.5) is now two observations old
    CHECK(mon.best_index() == 1);
    CHECK(mon.best_value() == 0.5);
    CHECK(mon.history().size() == 4);

    StoppingMonitor improving(2);
    CHECK_FALSE(improving.observe(3.0));
    CHECK_FALSE(improving.observe(2.0));
    CHECK_FALSE(improving.observe(1.0));
    CHECK_FALSE(improving.observe(0.5));
    CHECK(improving.best_index() == 3);

    CHECK_THROWS_AS(StoppingMonitor(0), InvalidArgument);
}

#include "msel/crossval.hpp"

#include <cmath>
#include <limits>

#include "msel/mathutil.hpp"

namespace msel {

namespace {

constexpr double kLeverageGuard = 1e-10;  // minimum distance of gamma_ii from 1

double score_fold(const Dataset& ds, const std::vector<int>& fold, const RegressionLearner& learner,
                  const FoldLoss& loss) {
    std::vector<int> train_idx;
    train_idx.reserve(static_cast<std::size_t>(ds.n()) - fold.size());
    std::vector<char> held(static_cast<std::size_t>(ds.n()), 0);
    for (int i : fold) held[static_cast<std::size_t>(i)] = 1;
    for (int i = 0; i < static_cast<int>(ds.n()); ++i)
        if (!held[static_cast<std::size_t>(i)]) train_idx.push_back(i);
    if (train_idx.empty()) throw InvalidArgument("fold leaves no training instances");

    RegressionModel model = learner(ds.subset(train_idx));
    Eigen::VectorXd preds(static_cast<Eigen::Index>(fold.size()));
    Eigen::VectorXd labels(static_cast<Eigen::Index>(fold.size()));
    for (std::size_t j = 0; j < fold.size(); ++j) {
        preds(static_cast<Eigen::Index>(j)) = model(ds.instance(fold[j]).features);
        labels(static_cast<Eigen::Index>(j)) = ds.label(fold[j]);
    }
    return loss(preds, labels);
}

}  // namespace

double mse_loss(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels) {
    if (predictions.size() != labels.size() || predictions.size() == 0)
        throw InvalidArgument("loss needs matching nonempty vectors");
    return (predictions - labels).squaredNorm() / static_cast<double>(predictions.size());
}

CvResult kfold_cv(const Dataset& ds, int K, const RegressionLearner& learner, std::uint64_t seed,
                  const FoldLoss& loss) {
    auto folds = kfold_partitions(ds, K, seed);
    CvResult res;
    res.k = K;
    res.fold_errors.reserve(folds.size());
    for (const auto& fold : folds) res.fold_errors.push_back(score_fold(ds, fold, learner, loss));
    res.mean_error = stable_mean(res.fold_errors);
    return res;
}

CvResult loocv(const Dataset& ds, const RegressionLearner& learner, const FoldLoss& loss) {
    int n = static_cast<int>(ds.n());
    if (n < 2) throw InvalidArgument("leave-one-out needs at least two instances");
    CvResult res;
    res.k = n;
    res.fold_errors.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        res.fold_errors.push_back(score_fold(ds, {i}, learner, loss));
    res.mean_error = stable_mean(res.fold_errors);
    return res;
}

LoocvShortcut loocv_shortcut(const Eigen::VectorXd& y, const LinearSmoother& sm) {
    if (y.size() != sm.gamma.rows())
        throw InvalidArgument("response length does not match smoother size");
    Eigen::VectorXd yhat = predict(sm, y);
    LoocvShortcut out;
    out.residuals.resize(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        double denom = 1.0 - sm.gamma(i, i);
        if (std::abs(denom) < kLeverageGuard)
            throw ComputationError("smoother interpolates instance " + std::to_string(i) +
                                   " (diagonal entry within 1e-10 of 1)");
        out.residuals(i) = (y(i) - yhat(i)) / denom;
    }
    out.sse = out.residuals.squaredNorm();
    return out;
}

double gcv(const Eigen::VectorXd& y, const LinearSmoother& sm) {
    if (y.size() != sm.gamma.rows())
        throw InvalidArgument("response length does not match smoother size");
    double n = static_cast<double>(y.size());
    double denom = 1.0 - effective_dof(sm) / n;
    if (std::abs(denom) < kLeverageGuard)
        throw ComputationError("average leverage is within 1e-10 of 1; generalized score undefined");
    Eigen::VectorXd yhat = predict(sm, y);
    return ((y - yhat) / denom).squaredNorm();
}

TuneResult tune_with_validation(const Dataset& ds, const Split& split,
                                const std::vector<double>& grid,
                                const std::function<RegressionLearner(double)>& learner_factory,
                                const FoldLoss& loss) {
    if (grid.empty()) throw InvalidArgument("parameter grid is empty");
    if (split.val_idx.empty()) throw InvalidArgument("tuning requires a validation part");
    if (split.train_idx.empty()) throw InvalidArgument("tuning requires a training part");

    Dataset train = ds.subset(split.train_idx);
    Eigen::VectorXd val_labels(static_cast<Eigen::Index>(split.val_idx.size()));
    for (std::size_t j = 0; j < split.val_idx.size(); ++j)
        val_labels(static_cast<Eigen::Index>(j)) = ds.label(split.val_idx[j]);

    TuneResult res;
    res.val_errors.reserve(grid.size());
    double best = std::numeric_limits<double>::infinity();
    for (double param : grid) {
        RegressionModel model = learner_factory(param)(train);
        Eigen::VectorXd preds(static_cast<Eigen::Index>(split.val_idx.size()));
        for (std::size_t j = 0; j < split.val_idx.size(); ++j)
            preds(static_cast<Eigen::Index>(j)) = model(ds.instance(split.val_idx[j]).features);
        double e = loss(preds, val_labels);
        res.val_errors.push_back(e);
        if (e < best) {
            best = e;
            res.best_param = param;
        }
    }
    return res;
}

StoppingMonitor::StoppingMonitor(int patience)
    : patience_(patience), best_value_(std::numeric_limits<double>::infinity()) {
    if (patience < 1) throw InvalidArgument("patience must be at least 1");
}

bool StoppingMonitor::observe(double value) {
    history_.push_back(value);
    if (value < best_value_) {
        best_value_ = value;
        best_index_ = static_cast<int>(history_.size()) - 1;
    }
    return static_cast<int>(history_.size()) - 1 - best_index_ >= patience_;
}

}  // namespace msel

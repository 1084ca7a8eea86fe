#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "msel/dataset.hpp"
#include "msel/smoothers.hpp"

namespace msel {

using RegressionModel = std::function<double(const Eigen::VectorXd&)>;
using RegressionLearner = std::function<RegressionModel(const Dataset&)>;

/// Loss over one held-out set; default is mean squared error.
using FoldLoss = std::function<double(const Eigen::VectorXd& predictions,
                                      const Eigen::VectorXd& labels)>;

double mse_loss(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels);

struct CvResult {
    std::vector<double> fold_errors;  // in fold order
    double mean_error = 0.0;
    int k = 0;
};

/// Retrains the learner K times, each time on every instance outside the
/// fold, and scores the fold.  The learner never sees a held-out instance.
CvResult kfold_cv(const Dataset& ds, int K, const RegressionLearner& learner, std::uint64_t seed,
                  const FoldLoss& loss = mse_loss);

/// Hold out each instance in index order (equivalent to K = N folds).
CvResult loocv(const Dataset& ds, const RegressionLearner& learner, const FoldLoss& loss = mse_loss);

struct LoocvShortcut {
    Eigen::VectorXd residuals;  // (y_i - yhat_i) / (1 - gamma_ii)
    double sse = 0.0;
};

/// Leave-one-out residuals of a fixed linear smoother without retraining.
/// Requires every diagonal entry to stay clear of 1 (non-interpolating).
LoocvShortcut loocv_shortcut(const Eigen::VectorXd& y, const LinearSmoother& sm);

/// Generalized score: every leverage is replaced by the average tr(gamma)/N,
/// giving sum_i ((y_i - yhat_i) / (1 - p/N))^2.
double gcv(const Eigen::VectorXd& y, const LinearSmoother& sm);

struct TuneResult {
    double best_param = 0.0;
    std::vector<double> val_errors;  // one per grid entry, grid order
};

/// Grid search scored on the validation part only; the test part is never
/// touched.  Earliest grid entry wins ties.
TuneResult tune_with_validation(const Dataset& ds, const Split& split,
                                const std::vector<double>& grid,
                                const std::function<RegressionLearner(double)>& learner_factory,
                                const FoldLoss& loss = mse_loss);

/// Patience-based early stopping over a validation-error stream.
class StoppingMonitor {
public:
    explicit StoppingMonitor(int patience);

    /// Record one more validation error; true once the best value is
    /// `patience` or more observations old.
    bool observe(double value);

    const std::vector<double>& history() const { return history_; }
    int patience() const { return patience_; }
    int best_index() const { return best_index_; }
    double best_value() const { return best_value_; }

private:
    std::vector<double> history_;
    int patience_;
    int best_index_ = -1;
    double best_value_;
};

}  // namespace msel

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "msel/dataset.hpp"

namespace msel {

/// Axis-aligned decision stump: predicts `polarity` when the feature value
/// exceeds the threshold, and -polarity otherwise.
struct Stump {
    int feature = 0;
    double threshold = 0.0;
    double polarity = 1.0;  // +1 or -1
};

double stump_predict(const Stump& s, const Eigen::VectorXd& x);

struct StumpFit {
    Stump stump;
    double weighted_error = 0.0;  // under weights normalized to sum 1
    double runner_up_gap = 0.0;   // margin to the closest strictly worse candidate
    int bit_ties = 1;             // candidates attaining exactly the minimum
};

/// Minimum-weighted-error stump over all features, midpoint thresholds and
/// both polarities.  Ties resolve to the lowest feature index, then the
/// lowest threshold, then polarity +1.  Searching both polarities keeps the
/// returned error at or below 1/2.
StumpFit fit_stump(const Dataset& ds, const Eigen::VectorXd& weights);

/// How the per-round coefficient is derived from the weighted error L:
/// full:  alpha = log((1-L)/L)
/// half:  alpha = log((1-L)/L) / 2
/// Both conventions share one reweighting trajectory, so they train the
/// same stumps; predictions agree because alphas differ by a positive scale.
enum class AlphaConvention { full, half };

struct BoostModel {
    std::vector<Stump> members;
    Eigen::VectorXd alphas;
    Eigen::VectorXd losses;  // per-round weighted errors, clamped away from {0,1}
    AlphaConvention convention = AlphaConvention::full;

    // selection-stability diagnostics, aggregated over rounds: the smallest
    // weighted-error margin between a chosen stump and its closest rival,
    // and whether any round's minimum was shared by several stumps
    double min_selection_gap = 0.0;
    bool selection_tied = false;
};

/// Round-based reweighting: train a stump on the current weights, derive its
/// coefficient, then scale each weight by exp(-y alpha_half h(x)) and
/// renormalize.  Weighted errors are clamped to [1e-12, 1 - 1e-12].
BoostModel adaboost_train(const Dataset& ds, int k, AlphaConvention convention);

/// Greedy additive fit of the exponential loss sum_i exp(-y_i f(x_i)): each
/// round picks the stump and coefficient minimizing the weighted loss, the
/// coefficient by a 1-D golden-section search.  Returns a half-convention
/// model; on tie-free data (selection gaps clear of floating-point noise)
/// it reproduces adaboost_train's stump sequence with the same alphas.
BoostModel stagewise_additive_fit(const Dataset& ds, int k);

double boost_score(const BoostModel& m, const Eigen::VectorXd& x);  // sum alpha_j h_j(x)
double boost_predict(const BoostModel& m, const Eigen::VectorXd& x);  // sign, sign(0)=+1

double training_error(const BoostModel& m, const Dataset& ds);

/// Normalized margins y_i * score(x_i) / sum(alpha), one per instance,
/// each in [-1, 1].  Requires sum(alpha) > 0.
Eigen::VectorXd boost_margins(const BoostModel& m, const Dataset& ds);

/// Fraction of margins at or below theta.
double margin_fraction(const Eigen::VectorXd& margins, double theta);

/// prod_j 2 sqrt(L_j (1 - L_j)), the reweighting normalizers; training
/// error never exceeds it.  Evaluated in log space.
double error_bound_product(const BoostModel& m);

/// Margin-distribution bound 2^k prod_j sqrt(L_j^(1-theta) (1-L_j)^(1+theta))
/// for half-convention models; the fraction of margins <= theta stays below
/// it.  Evaluated in log space.
double generalization_bound(const BoostModel& m, double theta);

/// The same bound when every round has edge xi (L_j = 1/2 - xi):
/// ((1-2xi)^(1-theta) (1+2xi)^(1+theta))^(k/2).
double edge_bound(double xi, double theta, int k);

using MemberLearner = std::function<std::function<double(const Eigen::VectorXd&)>(const Dataset&,
                                                                                  std::uint64_t)>;

enum class Aggregation { mean, sign_of_mean };

struct BaggedModel {
    struct Member {
        std::function<double(const Eigen::VectorXd&)> model;
        std::vector<int> feature_idx;  // ascending subset of the input features
    };
    std::vector<Member> members;
    Aggregation aggregation = Aggregation::mean;
    Eigen::Index input_dim = 0;
};

/// k members, each trained on its own bootstrap resample; feature_fraction
/// below 1 turns the ensemble into a random-subspace forest of the base
/// learner.  sample_size 0 means the training-set size.
BaggedModel bag_train(const Dataset& ds, int k, const MemberLearner& learner,
                      Eigen::Index sample_size, double feature_fraction, Aggregation aggregation,
                      std::uint64_t seed);

double bag_predict(const BaggedModel& m, const Eigen::VectorXd& x);

/// Variance of the average of k errors with common variance s and common
/// pairwise covariance c: s/k + c (k-1)/k.
double bagging_variance_theory(double s, double c, int k);

struct BaggingMcReport {
    double empirical_var = 0.0;
    double theory_var = 0.0;
    double se = 0.0;  // standard error of the empirical variance estimate
};

/// Draws reps correlated Gaussian error vectors and compares the empirical
/// variance of their average with the closed form.  The equicorrelated
/// covariance must be PSD: c >= -s/(k-1).
BaggingMcReport bagging_variance_mc(double s, double c, int k, int reps, std::uint64_t seed);

}  // namespace msel

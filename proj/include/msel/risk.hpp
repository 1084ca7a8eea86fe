#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "msel/dataset.hpp"

namespace msel {

/// Empirical moments of an estimator around a known target value.
/// The decomposition mse = variance + bias^2 holds by construction.
struct MomentReport {
    double bias = 0.0;
    double variance = 0.0;
    double mse = 0.0;
    Eigen::Index count = 0;
};

MomentReport moment_report(const Eigen::VectorXd& estimates, double true_value);

struct NoiseModel {
    enum class Provenance { known, estimated };
    double sigma2 = 0.0;
    Provenance provenance = Provenance::known;
};

/// sigma^2 estimated as sum((y_i - fitted_i)^2) / (n - 1).  Biased upward
/// when the fit underfits; callers usually pass a plain linear fit.
NoiseModel estimate_noise_variance(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted);

/// True-error estimate from err measured on m held-out instances:
/// Err = err - m * sigma2.
double test_err(double err, Eigen::Index m, double sigma2);

/// Stein-style estimate from training error and model sensitivity:
/// Err = err - n * sigma2 + 2 * sigma2 * df, df = sum_i d fitted_i / d y_i.
double sure_err(double err, Eigen::Index n, double sigma2, double df);

struct RiskReport {
    double err = 0.0;        // training residual sum of squares
    double Err = 0.0;        // estimated true error
    Eigen::Index n_or_m = 0; // instances behind err (training n or held-out m)
    double sigma2 = 0.0;
    double df = 0.0;         // complexity term; 0 for the held-out case
};

RiskReport sure_report(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted, double df,
                       const NoiseModel& noise);

/// A differentiable test function paired with its derivative; the pair is
/// what makes the identity E((z - mu) g(z)) = sigma^2 E(g'(z)) checkable.
/// sigma_cap bounds the sigmas Monte Carlo drivers should draw for it.
struct SteinFunction {
    std::string name;
    std::function<double(double)> g;
    std::function<double(double)> dg;
    double sigma_cap = 1e300;
};

/// Registry: identity, square, cube, sine, and a scaled exponential whose
/// argument is clipped to [-30, 30] (derivative zero outside the clip).
const std::vector<SteinFunction>& stein_functions();

struct SteinReport {
    double lhs = 0.0;       // mean of (z - mu) g(z)
    double rhs = 0.0;       // sigma^2 * mean of g'(z)
    double abs_diff = 0.0;
    double se = 0.0;        // MC standard error of lhs - rhs (paired samples)
};

SteinReport stein_lemma_check(const SteinFunction& fn, double mu, double sigma, int reps,
                              std::uint64_t seed);

using BinaryModel = std::function<double(const Eigen::VectorXd&)>;
using BinaryLearner = std::function<BinaryModel(const Dataset&, std::uint64_t)>;

/// Prediction-error decomposition for a bagged learner against the Bayes
/// rule of the generator:
///   bias     = PE(majority vote across repetitions) - PE(Bayes)
///   variance = mean repetition PE - PE(majority vote across repetitions)
/// Each repetition draws a fresh training set and bags k members on it.
struct BiasVarianceReport {
    double bias = 0.0;
    double variance = 0.0;
    double pe_vote = 0.0;   // PE of the across-repetition majority vote
    double pe_mean = 0.0;   // mean PE of the per-repetition models
    double pe_bayes = 0.0;
};

struct EnsembleBvOptions {
    Eigen::Index n_train = 100;
    Eigen::Index n_test = 10000;
};

BiasVarianceReport ensemble_bias_variance(const GaussianMixture& gen, const BinaryLearner& learner,
                                          int k, int reps, std::uint64_t seed,
                                          const EnsembleBvOptions& opts = {});

}  // namespace msel

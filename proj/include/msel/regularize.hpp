#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "msel/errors.hpp"

namespace msel {

/// Quadratic loss (1/2)(x - x_star)^T H (x - x_star) with H symmetric PSD.
/// The eigendecomposition H = U diag(lambda) U^T is computed once and
/// shared by the shrinkage, trajectory, and effective-parameter routines.
class QuadraticObjective {
public:
    QuadraticObjective(Eigen::VectorXd x_star, Eigen::MatrixXd H);

    const Eigen::VectorXd& x_star() const { return x_star_; }
    const Eigen::MatrixXd& H() const { return H_; }
    const Eigen::MatrixXd& U() const { return U_; }
    const Eigen::VectorXd& lambda() const { return lambda_; }  // ascending, >= 0
    Eigen::Index dim() const { return x_star_.size(); }

private:
    Eigen::VectorXd x_star_;
    Eigen::MatrixXd H_;
    Eigen::MatrixXd U_;
    Eigen::VectorXd lambda_;
};

/// Penalized minimizer U (Lambda + alpha I)^-1 Lambda U^T x_star: each
/// eigencomponent of x_star is kept by the factor lambda_j/(lambda_j+alpha).
Eigen::VectorXd quad_reg_minimizer(const QuadraticObjective& q, double alpha);

/// The per-direction factors lambda_j / (lambda_j + alpha), ascending in j.
Eigen::VectorXd shrinkage_factors(const QuadraticObjective& q, double alpha);

/// Effective number of parameters sum_j lambda_j / (lambda_j + alpha).
double effective_params(const QuadraticObjective& q, double alpha);

struct GdResult {
    Eigen::VectorXd iterative;    // literal steps w <- w - eta H (w - x_star), w(0) = 0
    Eigen::VectorXd closed_form;  // U (I - (I - eta Lambda)^t) U^T x_star
    bool stable = true;           // eta * lambda_max < 1
};

GdResult gd_trajectory(const QuadraticObjective& q, double eta, int t);

/// Penalty level whose minimizer tracks t steps of learning rate eta.
double early_stop_equivalent_alpha(double eta, int t);

/// One-dimensional penalized minimizer for curvature h:
/// 0 when |x_star| <= alpha/h, else x_star shrunk toward 0 by alpha/h.
double soft_threshold(double x_star, double alpha, double h);

enum class RegressionKind { ols, ridge, lasso };

struct RegressionFit {
    Eigen::VectorXd beta;  // aligned with the design columns; intercept first
                           // when the design carries one
    double alpha = 0.0;
    RegressionKind kind = RegressionKind::ols;
    int iterations = 0;    // full coordinate cycles (lasso only)
    bool converged = true;
    std::vector<double> objective_trace;  // internal objective per cycle (lasso only)
};

/// Prepend a column of ones: rows x, design [1, x].
Eigen::MatrixXd design_with_intercept(const Eigen::MatrixXd& features);

/// beta = (X^T X)^-1 X^T y through a stable factorization of the normal
/// equations.  Requires cond(X^T X) < 1e12.
RegressionFit ols_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// beta = (X^T X + alpha I)^-1 X^T y; alpha = 0 reproduces ols_solve
/// bit for bit (same factorization path).
RegressionFit ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha);

struct LassoOptions {
    bool add_intercept = true;   // unpenalized ones column
    bool standardize = true;     // center+scale features (scale only without intercept)
    double tol = 1e-10;          // max coefficient change per cycle
    int max_iter = 100000;       // full cycles
};

/// Cyclic coordinate descent on (1/2)||y - X beta||^2 + alpha * ||beta||_1
/// (intercept excluded from the penalty).  Coefficients are returned on the
/// original feature scale.
RegressionFit lasso_cd(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, double alpha,
                       const LassoOptions& opts = {});

/// Data model y = v^T x + label_sigma * noise with x standard normal.
struct LinearModelSpec {
    Eigen::VectorXd v;
    double label_sigma = 0.0;
};

struct NoiseInjectionReport {
    double noisy_loss = 0.0;   // mean (w^T (x + eps) - y)^2
    double clean_loss = 0.0;   // mean (w^T x - y)^2
    double penalty = 0.0;      // sigma^2 ||w||^2
    double abs_diff = 0.0;     // |noisy - (clean + penalty)|
    double se = 0.0;           // MC standard error of the paired difference
};

/// For a linear predictor the input-noise loss splits exactly into the
/// clean loss plus sigma^2 ||w||^2; both sides share the same draws.
NoiseInjectionReport noise_injection_check(const Eigen::VectorXd& w, const LinearModelSpec& data,
                                           double sigma, int reps, std::uint64_t seed);

}  // namespace msel

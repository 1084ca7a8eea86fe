#pragma once

#include <Eigen/Dense>

#include "msel/errors.hpp"

namespace msel {

enum class SmootherKind { ols, ridge, mean, custom };

/// A fixed linear map y -> gamma * y.  Degrees of freedom are tr(gamma),
/// which for the least-squares hat equals the number of design columns.
struct LinearSmoother {
    Eigen::MatrixXd gamma;
    SmootherKind kind = SmootherKind::custom;
    double alpha = 0.0;  // ridge penalty; 0 for the others
};

/// Least-squares hat matrix X (X^T X)^-1 X^T, formed from the thin SVD so
/// no explicit inverse is taken.  Requires cond(X^T X) < 1e12.
LinearSmoother ols_hat(const Eigen::MatrixXd& X);

/// Ridge hat X (X^T X + alpha I)^-1 X^T = U diag(s^2/(s^2+alpha)) U^T.
/// alpha = 0 reduces to ols_hat (including its conditioning check).
LinearSmoother ridge_hat(const Eigen::MatrixXd& X, double alpha);

/// Constant predictor: every fitted value is the sample mean.
LinearSmoother mean_hat(Eigen::Index n);

LinearSmoother smoother_from_matrix(Eigen::MatrixXd gamma);

Eigen::VectorXd predict(const LinearSmoother& sm, const Eigen::VectorXd& y);

/// Effective degrees of freedom tr(gamma); equals the sum over singular
/// directions of s_j^2 / (s_j^2 + alpha) for the ridge hat.
double effective_dof(const LinearSmoother& sm);

/// Vandermonde design [1, t, t^2, ..., t^degree] for 1-D inputs.  Callers
/// should rescale t to [-1, 1] first when the degree is large.
Eigen::MatrixXd polynomial_design(const Eigen::VectorXd& t, int degree);

}  // namespace msel

#include "msel/smoothers.hpp"

#include <cmath>
#include <sstream>

namespace msel {

namespace {

constexpr double kMaxCondition = 1e12;  // on X^T X, i.e. (s_max/s_min)^2

Eigen::BDCSVD<Eigen::MatrixXd> thin_svd(const Eigen::MatrixXd& X) {
    if (X.rows() == 0 || X.cols() == 0) throw InvalidArgument("design matrix is empty");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU);
    return svd;
}

void require_well_conditioned(const Eigen::BDCSVD<Eigen::MatrixXd>& svd, Eigen::Index cols) {
    const auto& s = svd.singularValues();
    double smax = s(0);
    double smin = s(s.size() - 1);
    double cond2 = (smin > 0.0) ? (smax / smin) * (smax / smin)
                                : std::numeric_limits<double>::infinity();
    if (s.size() < cols || !(cond2 < kMaxCondition)) {
        std::ostringstream msg;
        msg << "design is numerically singular: cond(X^T X) ~ " << cond2
            << " exceeds " << kMaxCondition;
        throw ComputationError(msg.str());
    }
}

}  // namespace

LinearSmoother ols_hat(const Eigen::MatrixXd& X) {
    auto svd = thin_svd(X);
    require_well_conditioned(svd, X.cols());
    const Eigen::MatrixXd& U = svd.matrixU();
    return LinearSmoother{U * U.transpose(), SmootherKind::ols, 0.0};
}

LinearSmoother ridge_hat(const Eigen::MatrixXd& X, double alpha) {
    if (alpha < 0) throw InvalidArgument("ridge penalty must be nonnegative");
    auto svd = thin_svd(X);
    if (alpha == 0.0) require_well_conditioned(svd, X.cols());
    const Eigen::MatrixXd& U = svd.matrixU();
    Eigen::VectorXd s2 = svd.singularValues().array().square();
    Eigen::VectorXd shrink = s2.array() / (s2.array() + alpha);
    return LinearSmoother{U * shrink.asDiagonal() * U.transpose(), SmootherKind::ridge, alpha};
}

LinearSmoother mean_hat(Eigen::Index n) {
    if (n < 1) throw InvalidArgument("smoother size must be at least 1");
    double w = 1.0 / static_cast<double>(n);
    return LinearSmoother{Eigen::MatrixXd::Constant(n, n, w), SmootherKind::mean, 0.0};
}

LinearSmoother smoother_from_matrix(Eigen::MatrixXd gamma) {
    if (gamma.rows() == 0 || gamma.rows() != gamma.cols())
        throw InvalidArgument("smoother matrix must be square and nonempty");
    if (!gamma.allFinite()) throw InvalidArgument("smoother matrix contains a non-finite value");
    return LinearSmoother{std::move(gamma), SmootherKind::custom, 0.0};
}

Eigen::VectorXd predict(const LinearSmoother& sm, const Eigen::VectorXd& y) {
    if (y.size() != sm.gamma.cols())
        throw InvalidArgument("response length does not match smoother size");
    return sm.gamma * y;
}

double effective_dof(const LinearSmoother& sm) { return sm.gamma.trace(); }

Eigen::MatrixXd polynomial_design(const Eigen::VectorXd& t, int degree) {
    if (degree < 0) throw InvalidArgument("polynomial degree must be nonnegative");
    if (t.size() == 0) throw InvalidArgument("input vector is empty");
    Eigen::MatrixXd X(t.size(), degree + 1);
    X.col(0).setOnes();
    for (int j = 1; j <= degree; ++j) X.col(j) = X.col(j - 1).cwiseProduct(t);
    return X;
}

}  // namespace msel

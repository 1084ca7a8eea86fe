#include "msel/regularize.hpp"

#include <cmath>
#include <sstream>

#include "msel/mathutil.hpp"
#include "msel/rng.hpp"

namespace msel {

namespace {

constexpr double kMaxCondition = 1e12;

void require_design_conditioned(const Eigen::MatrixXd& X) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(X);
    const auto& s = svd.singularValues();
    double smax = s(0);
    double smin = s(s.size() - 1);
    double cond2 = (smin > 0.0) ? (smax / smin) * (smax / smin)
                                : std::numeric_limits<double>::infinity();
    if (s.size() < X.cols() || !(cond2 < kMaxCondition)) {
        std::ostringstream msg;
        msg << "design is numerically singular: cond(X^T X) ~ " << cond2
            << " exceeds " << kMaxCondition;
        throw ComputationError(msg.str());
    }
}

RegressionFit solve_normal(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha,
                           RegressionKind kind) {
    if (X.rows() == 0 || X.cols() == 0) throw InvalidArgument("design matrix is empty");
    if (y.size() != X.rows()) throw InvalidArgument("response length does not match design rows");
    if (alpha < 0) throw InvalidArgument("penalty must be nonnegative");
    if (alpha == 0.0) require_design_conditioned(X);

    Eigen::MatrixXd A = X.transpose() * X;
    A.diagonal().array() += alpha;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw ComputationError("normal-equations factorization failed");
    RegressionFit fit;
    fit.beta = ldlt.solve(X.transpose() * y);
    fit.alpha = alpha;
    fit.kind = kind;
    return fit;
}

}  // namespace

QuadraticObjective::QuadraticObjective(Eigen::VectorXd x_star, Eigen::MatrixXd H)
    : x_star_(std::move(x_star)), H_(std::move(H)) {
    if (x_star_.size() == 0) throw InvalidArgument("x_star is empty");
    if (H_.rows() != x_star_.size() || H_.cols() != x_star_.size())
        throw InvalidArgument("H dimensions do not match x_star");
    double scale = std::max(1.0, H_.cwiseAbs().maxCoeff());
    if ((H_ - H_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InvalidArgument("H must be symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (H_ + H_.transpose()));
    if (es.info() != Eigen::Success) throw ComputationError("eigendecomposition failed");
    U_ = es.eigenvectors();
    lambda_ = es.eigenvalues();
    double lmax = std::max(0.0, lambda_.maxCoeff());
    for (Eigen::Index j = 0; j < lambda_.size(); ++j) {
        if (lambda_(j) < -1e-10 * std::max(1.0, lmax))
            throw InvalidArgument("H must be positive semidefinite");
        if (lambda_(j) < 0) lambda_(j) = 0.0;
    }
}

Eigen::VectorXd quad_reg_minimizer(const QuadraticObjective& q, double alpha) {
    return q.U() * shrinkage_factors(q, alpha).asDiagonal() * (q.U().transpose() * q.x_star());
}

Eigen::VectorXd shrinkage_factors(const QuadraticObjective& q, double alpha) {
    if (alpha < 0) throw InvalidArgument("penalty must be nonnegative");
    Eigen::VectorXd f(q.lambda().size());
    for (Eigen::Index j = 0; j < f.size(); ++j) {
        double l = q.lambda()(j);
        // 0/0 at lambda = alpha = 0: treat the flat direction as unshrunk
        f(j) = (l + alpha > 0) ? l / (l + alpha) : 1.0;
    }
    return f;
}

double effective_params(const QuadraticObjective& q, double alpha) {
    if (alpha < 0) throw InvalidArgument("penalty must be nonnegative");
    double s = 0.0;
    for (Eigen::Index j = 0; j < q.lambda().size(); ++j) {
        double l = q.lambda()(j);
        s += (l + alpha > 0) ? l / (l + alpha) : 1.0;
    }
    return s;
}

GdResult gd_trajectory(const QuadraticObjective& q, double eta, int t) {
    if (eta <= 0) throw InvalidArgument("learning rate must be positive");
    if (t < 0) throw InvalidArgument("step count must be nonnegative");

    GdResult res;
    res.stable = eta * q.lambda().maxCoeff() < 1.0;

    Eigen::VectorXd w = Eigen::VectorXd::Zero(q.dim());
    for (int s = 0; s < t; ++s) w -= eta * (q.H() * (w - q.x_star()));
    res.iterative = std::move(w);

    Eigen::VectorXd keep(q.lambda().size());
    for (Eigen::Index j = 0; j < keep.size(); ++j)
        keep(j) = 1.0 - std::pow(1.0 - eta * q.lambda()(j), t);
    res.closed_form = q.U() * keep.asDiagonal() * (q.U().transpose() * q.x_star());
    return res;
}

double early_stop_equivalent_alpha(double eta, int t) {
    if (eta <= 0) throw InvalidArgument("learning rate must be positive");
    if (t < 1) throw InvalidArgument("step count must be at least 1");
    return 1.0 / (static_cast<double>(t) * eta);
}

double soft_threshold(double x_star, double alpha, double h) {
    if (alpha <= 0) throw InvalidArgument("threshold penalty must be positive");
    if (h <= 0) throw InvalidArgument("curvature must be positive");
    double thr = alpha / h;
    if (std::abs(x_star) <= thr) return 0.0;
    return x_star - thr * sign_pm(x_star);
}

Eigen::MatrixXd design_with_intercept(const Eigen::MatrixXd& features) {
    Eigen::MatrixXd X(features.rows(), features.cols() + 1);
    X.col(0).setOnes();
    X.rightCols(features.cols()) = features;
    return X;
}

RegressionFit ols_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    return solve_normal(X, y, 0.0, RegressionKind::ols);
}

RegressionFit ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha) {
    return solve_normal(X, y, alpha, RegressionKind::ridge);
}

RegressionFit lasso_cd(const Eigen::MatrixXd& features, const Eigen::VectorXd& y, double alpha,
                       const LassoOptions& opts) {
    if (features.rows() == 0 || features.cols() == 0)
        throw InvalidArgument("feature matrix is empty");
    if (y.size() != features.rows())
        throw InvalidArgument("response length does not match feature rows");
    if (alpha < 0) throw InvalidArgument("penalty must be nonnegative");
    if (opts.tol <= 0 || opts.max_iter < 1) throw InvalidArgument("invalid solver options");

    const Eigen::Index n = features.rows();
    const Eigen::Index d = features.cols();
    const Eigen::Index off = opts.add_intercept ? 1 : 0;
    const Eigen::Index P = d + off;

    // internal design: optional ones column, then (possibly standardized) features
    Eigen::MatrixXd Z(n, P);
    if (opts.add_intercept) Z.col(0).setOnes();
    Eigen::VectorXd center = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        Eigen::VectorXd col = features.col(j);
        if (opts.standardize) {
            if (opts.add_intercept) {
                center(j) = col.mean();
                col.array() -= center(j);
            }
            double sd = std::sqrt(col.squaredNorm() / static_cast<double>(n));
            if (sd > 1e-12) {
                scale(j) = sd;
                col /= sd;
            }
        }
        Z.col(off + j) = col;
    }

    Eigen::VectorXd h(P);
    for (Eigen::Index j = 0; j < P; ++j) h(j) = Z.col(j).squaredNorm();

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(P);
    Eigen::VectorXd r = y;  // residual y - Z beta
    RegressionFit fit;
    fit.alpha = alpha;
    fit.kind = RegressionKind::lasso;
    fit.converged = false;

    for (int cycle = 0; cycle < opts.max_iter; ++cycle) {
        double max_delta = 0.0;
        for (Eigen::Index j = 0; j < P; ++j) {
            if (h(j) <= 1e-12 * static_cast<double>(n)) continue;  // degenerate column stays 0
            double rho = Z.col(j).dot(r) + h(j) * beta(j);
            double candidate = rho / h(j);
            bool penalized = !(opts.add_intercept && j == 0);
            double next = (penalized && alpha > 0) ? soft_threshold(candidate, alpha, h(j))
                                                   : candidate;
            double delta = next - beta(j);
            if (delta != 0.0) {
                r -= delta * Z.col(j);
                beta(j) = next;
            }
            max_delta = std::max(max_delta, std::abs(delta));
        }
        double l1 = 0.0;
        for (Eigen::Index j = off; j < P; ++j) l1 += std::abs(beta(j));
        fit.objective_trace.push_back(0.5 * r.squaredNorm() + alpha * l1);
        fit.iterations = cycle + 1;
        if (max_delta < opts.tol) {
            fit.converged = true;
            break;
        }
    }

    // undo standardization so coefficients refer to the original features
    fit.beta.resize(P);
    if (opts.add_intercept) {
        double b0 = beta(0);
        for (Eigen::Index j = 0; j < d; ++j) {
            double bj = beta(1 + j) / scale(j);
            fit.beta(1 + j) = bj;
            b0 -= bj * center(j);
        }
        fit.beta(0) = b0;
    } else {
        for (Eigen::Index j = 0; j < d; ++j) fit.beta(j) = beta(j) / scale(j);
    }
    return fit;
}

NoiseInjectionReport noise_injection_check(const Eigen::VectorXd& w, const LinearModelSpec& data,
                                           double sigma, int reps, std::uint64_t seed) {
    if (w.size() == 0 || w.size() != data.v.size())
        throw InvalidArgument("weight and data dimensions must match");
    if (sigma < 0 || data.label_sigma < 0) throw InvalidArgument("sigmas must be nonnegative");
    if (reps < 2) throw InvalidArgument("noise check needs at least two samples");

    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index d = w.size();
    const double penalty = sigma * sigma * w.squaredNorm();

    double sum_noisy = 0.0, sum_clean = 0.0;
    std::vector<double> paired(static_cast<std::size_t>(reps));
    Eigen::VectorXd x(d), eps(d);
    for (int r = 0; r < reps; ++r) {
        for (Eigen::Index j = 0; j < d; ++j) x(j) = gauss(rng);
        double y = data.v.dot(x) + data.label_sigma * gauss(rng);
        for (Eigen::Index j = 0; j < d; ++j) eps(j) = sigma * gauss(rng);
        double a = w.dot(x + eps) - y;
        double b = w.dot(x) - y;
        sum_noisy += a * a;
        sum_clean += b * b;
        paired[static_cast<std::size_t>(r)] = a * a - b * b - penalty;
    }

    NoiseInjectionReport rep;
    rep.noisy_loss = sum_noisy / reps;
    rep.clean_loss = sum_clean / reps;
    rep.penalty = penalty;
    rep.abs_diff = std::abs(rep.noisy_loss - (rep.clean_loss + penalty));
    rep.se = sample_sd(paired) / std::sqrt(static_cast<double>(reps));
    return rep;
}

}  // namespace msel

#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "msel/rng.hpp"
#include "msel/smoothers.hpp"

using namespace msel;

namespace {

Eigen::MatrixXd random_tall(int n, int d, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd X(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = gauss(rng);
    return X;
}

}  // namespace

TEST_CASE("ridge on the identity design shrinks every value by 1/(1+alpha)") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
    double alpha = 2.5;
    LinearSmoother sm = ridge_hat(X, alpha);
    Eigen::VectorXd y(4);
    y << 1.0, -2.0, 3.0, 0.5;
    Eigen::VectorXd fitted = predict(sm, y);
    for (int i = 0; i < 4; ++i)
        CHECK(fitted(i) == doctest::Approx(y(i) / 3.5).epsilon(1e-14));
    // each singular direction keeps 1/(1+alpha), so dof = 4/3.5
    CHECK(effective_dof(sm) == doctest::Approx(8.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("mean smoother has one effective degree of freedom") {
    LinearSmoother sm = mean_hat(5);
    CHECK(effective_dof(sm) == doctest::Approx(1.0).epsilon(1e-14));
    Eigen::VectorXd y(5);
    y << 1, 2, 3, 4, 5;
    Eigen::VectorXd fitted = predict(sm, y);
    for (int i = 0; i < 5; ++i) CHECK(fitted(i) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(mean_hat(0), InvalidArgument);
}

TEST_CASE("least-squares hat fits match the normal equations") {
    Eigen::MatrixXd X = random_tall(15, 4, 21);
    Eigen::VectorXd y = Eigen::VectorXd::Random(15);
    LinearSmoother sm = ols_hat(X);

    Eigen::VectorXd beta = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    Eigen::VectorXd direct = X * beta;
    CHECK((predict(sm, y) - direct).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("least-squares hat trace equals the column count") {
    for (std::uint64_t seed : {1, 2, 3}) {
        Eigen::MatrixXd X = random_tall(20, 5, seed);
        LinearSmoother sm = ols_hat(X);
        CHECK(std::abs(effective_dof(sm) - 5.0) < 1e-6);
    }
    LinearSmoother full = ols_hat(Eigen::MatrixXd::Identity(7, 7));
    CHECK(effective_dof(full) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("least-squares hat is idempotent") {
    Eigen::MatrixXd X = random_tall(12, 3, 77);
    LinearSmoother sm = ols_hat(X);
    Eigen::MatrixXd diff = sm.gamma * sm.gamma - sm.gamma;
    CHECK(diff.lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("ridge at alpha 0 reproduces the least-squares hat") {
    Eigen::MatrixXd X = random_tall(10, 3, 5);
    LinearSmoother ols = ols_hat(X);
    LinearSmoother ridge0 = ridge_hat(X, 0.0);
    CHECK((ols.gamma - ridge0.gamma).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("ridge dof decreases in alpha and matches the spectral sum") {
    Eigen::MatrixXd X = random_tall(12, 4, 9);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(X);
    Eigen::VectorXd s = svd.singularValues();
    double prev = 5.0;
    for (double alpha : {0.0, 0.1, 1.0, 10.0, 100.0}) {
        double dof = effective_dof(ridge_hat(X, alpha));
        double expected = 0.0;
        for (Eigen::Index j = 0; j < s.size(); ++j)
            expected += s(j) * s(j) / (s(j) * s(j) + alpha);
        CHECK(dof == doctest::Approx(expected).epsilon(1e-10));
        CHECK(dof < prev + 1e-12);
        prev = dof;
    }
}

TEST_CASE("singular designs are rejected, but ridge with alpha > 0 accepts them") {
    Eigen::MatrixXd X(6, 2);
    for (int i = 0; i < 6; ++i) {
        X(i, 0) = i;
        X(i, 1) = 2.0 * i;  // exact column duplicate up to scale
    }
    CHECK_THROWS_AS(ols_hat(X), ComputationError);
    CHECK_THROWS_AS(ridge_hat(X, 0.0), ComputationError);
    CHECK_NOTHROW(ridge_hat(X, 0.5));
    CHECK_THROWS_AS(ridge_hat(X, -1.0), InvalidArgument);
}

TEST_CASE("smoother_from_matrix validates its input") {
    CHECK_THROWS_AS(smoother_from_matrix(Eigen::MatrixXd(2, 3)), InvalidArgument);
    CHECK_THROWS_AS(smoother_from_matrix(Eigen::MatrixXd(0, 0)), InvalidArgument);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(smoother_from_matrix(bad), InvalidArgument);

    LinearSmoother sm = smoother_from_matrix(Eigen::MatrixXd::Identity(3, 3));
    CHECK(sm.kind == SmootherKind::custom);
    Eigen::VectorXd y(2);
    CHECK_THROWS_AS(predict(sm, y), InvalidArgument);
}

TEST_CASE("polynomial design is the Vandermonde matrix") {
    Eigen::VectorXd t(2);
    t << 2.0, -1.0;
    Eigen::MatrixXd X = polynomial_design(t, 3);
    REQUIRE(X.rows() == 2);
    REQUIRE(X.cols() == 4);
    CHECK(X(0, 0) == 1.0);
    CHECK(X(0, 1) == 2.0);
    CHECK(X(0, 2) == 4.0);
    CHECK(X(0, 3) == 8.0);
    CHECK(X(1, 3) == -1.0);

    Eigen::MatrixXd ones = polynomial_design(t, 0);
    CHECK(ones.cols() == 1);
    CHECK(ones(0, 0) == 1.0);
    CHECK_THROWS_AS(polynomial_design(t, -1), InvalidArgument);
}

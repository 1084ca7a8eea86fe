#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "msel/ensemble.hpp"
#include "msel/risk.hpp"
#include "msel/rng.hpp"

using namespace msel;

TEST_CASE("moment report recovers bias, variance, and their mse identity") {
    Eigen::VectorXd est(2);
    est << 2.0, 4.0;
    MomentReport rep = moment_report(est, 3.0);
    // mean 3: bias 0, spread (1 + 1)/2 = 1
    CHECK(rep.bias == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rep.variance == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rep.mse == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rep.count == 2);

    Eigen::VectorXd shifted(3);
    shifted << 5.0, 5.0, 5.0;
    MomentReport biased = moment_report(shifted, 3.0);
    CHECK(biased.bias == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(biased.variance == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(biased.mse == doctest::Approx(4.0).epsilon(1e-15));

    CHECK_THROWS_AS(moment_report(Eigen::VectorXd(0), 0.0), InvalidArgument);
}

TEST_CASE("mse equals variance plus squared bias on random estimates") {
    auto rng = make_rng(31);
    std::normal_distribution<double> gauss(1.7, 0.8);
    Eigen::VectorXd est(101);
    for (Eigen::Index i = 0; i < est.size(); ++i) est(i) = gauss(rng);
    MomentReport rep = moment_report(est, 1.5);
    CHECK(rep.mse == doctest::Approx(rep.variance + rep.bias * rep.bias).epsilon(1e-12));
}

TEST_CASE("noise variance estimate divides the residual sum by n - 1") {
    Eigen::VectorXd y(2), fitted(2);
    y << 0.0, 2.0;
    fitted << 1.0, 1.0;
    NoiseModel nm = estimate_noise_variance(y, fitted);
    CHECK(nm.sigma2 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(nm.provenance == NoiseModel::Provenance::estimated);

    CHECK_THROWS_AS(estimate_noise_variance(y, Eigen::VectorXd(3)), InvalidArgument);
    CHECK_THROWS_AS(estimate_noise_variance(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)),
                    InvalidArgument);
}

TEST_CASE("true-error estimates are the stated affine corrections") {
    CHECK(test_err(10.0, 5, 0.5) == doctest::Approx(7.5).epsilon(1e-15));
    // err - n sigma2 + 2 sigma2 df = 10 - 2.5 + 3
    CHECK(sure_err(10.0, 5, 0.5, 3.0) == doctest::Approx(10.5).epsilon(1e-15));
    CHECK(sure_err(10.0, 5, 0.5, 0.0) == test_err(10.0, 5, 0.5));

    CHECK_THROWS_AS(test_err(1.0, 0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(test_err(1.0, 5, -0.1), InvalidArgument);
    CHECK_THROWS_AS(sure_err(1.0, 5, 0.5, -1.0), InvalidArgument);
}

TEST_CASE("risk report wires the pieces together") {
    Eigen::VectorXd y(3), fitted(3);
    y << 1.0, 2.0, 3.0;
    fitted << 1.5, 2.0, 2.5;
    NoiseModel nm{0.2, NoiseModel::Provenance::known};
    RiskReport rep = sure_report(y, fitted, 1.5, nm);
    CHECK(rep.err == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rep.n_or_m == 3);
    CHECK(rep.sigma2 == 0.2);
    CHECK(rep.df == 1.5);
    CHECK(rep.Err == doctest::Approx(0.5 - 3 * 0.2 + 2 * 0.2 * 1.5).epsilon(1e-14));
}

TEST_CASE("the registered test functions cover the documented family") {
    const auto& fns = stein_functions();
    REQUIRE(fns.size() == 5);
    CHECK(fns[0].name == "identity");
    CHECK(fns[1].name == "square");
    // every entry carries a usable derivative
    for (const auto& fn : fns) {
        CHECK(fn.g);
        CHECK(fn.dg);
        CHECK(fn.sigma_cap > 0.0);
    }
    // the exponential entry caps the sigmas MC drivers may use
    CHECK(fns[4].sigma_cap == 1.0);
}

TEST_CASE("identity check: E((z - mu) g(z)) = sigma^2 E(g'(z)) for g(z) = z^2") {
    const auto& square = stein_functions()[1];
    // closed form at mu = sigma = 1: E(z^3) - E(z^2) = 4 - 2 = 2
    SteinReport rep = stein_lemma_check(square, 1.0, 1.0, 100000, 13);
    CHECK(std::abs(rep.lhs - 2.0) < 0.1);
    CHECK(std::abs(rep.rhs - 2.0) < 0.05);
    CHECK(rep.abs_diff == doctest::Approx(std::abs(rep.lhs - rep.rhs)).epsilon(1e-12));
    CHECK(rep.abs_diff <= 4.0 * rep.se);
    CHECK(rep.se > 0.0);

    CHECK_THROWS_AS(stein_lemma_check(square, 0.0, 0.0, 100, 1), InvalidArgument);
    CHECK_THROWS_AS(stein_lemma_check(square, 0.0, 1.0, 1, 1), InvalidArgument);
}

TEST_CASE("paired sampling keeps the linear function exact") {
    // g(z) = z makes (z - mu) g(z) - sigma^2 g'(z) have mean 0 but the
    // check still sees MC noise; the identity function's rhs is exact.
    const auto& identity = stein_functions()[0];
    SteinReport rep = stein_lemma_check(identity, 2.0, 0.5, 50000, 17);
    CHECK(rep.rhs == doctest::Approx(0.25).epsilon(1e-12));  // sigma^2 * 1
    CHECK(rep.abs_diff <= 4.0 * rep.se);
}

namespace {

// stump learner for the decomposition harness: one axis-aligned cut,
// trained on uniform weights
BinaryModel stump_learner(const Dataset& ds, std::uint64_t) {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(ds.n(), 1.0 / static_cast<double>(ds.n()));
    StumpFit sf = fit_stump(ds, w);
    Stump s = sf.stump;
    return [s](const Eigen::VectorXd& x) { return stump_predict(s, x); };
}

GaussianMixture test_mixture() {
    GaussianMixture gm;
    gm.mean_pos = Eigen::Vector2d(1.0, 1.0);
    gm.mean_neg = Eigen::Vector2d(-1.0, -1.0);
    gm.sigma = 1.2;
    return gm;
}

}  // namespace

TEST_CASE("the Bayes rule itself has zero bias and zero variance") {
    GaussianMixture gm = test_mixture();
    BinaryLearner bayes = [gm](const Dataset&, std::uint64_t) {
        return [gm](const Eigen::VectorXd& x) { return bayes_predict(gm, x); };
    };
    EnsembleBvOptions opts;
    opts.n_train = 30;
    opts.n_test = 500;
    BiasVarianceReport rep = ensemble_bias_variance(gm, bayes, 1, 5, 3, opts);
    // every repetition and the vote coincide with the Bayes predictions;
    // the mean over repetitions can round by an ulp
    CHECK(rep.bias == 0.0);
    CHECK(rep.pe_vote == rep.pe_bayes);
    CHECK(std::abs(rep.variance) <= 1e-15);
}

TEST_CASE("a constant learner has zero variance and positive bias") {
    GaussianMixture gm = test_mixture();
    BinaryLearner constant = [](const Dataset&, std::uint64_t) {
        return [](const Eigen::VectorXd&) { return 1.0; };
    };
    EnsembleBvOptions opts;
    opts.n_train = 30;
    opts.n_test = 2000;
    BiasVarianceReport rep = ensemble_bias_variance(gm, constant, 1, 5, 3, opts);
    CHECK(std::abs(rep.variance) <= 1e-15);
    CHECK(rep.bias > 0.2);  // always-plus errs on about half the stream
}

TEST_CASE("bagging more stumps shifts error from variance toward the vote") {
    GaussianMixture gm = test_mixture();
    EnsembleBvOptions opts;
    opts.n_train = 40;
    opts.n_test = 1500;
    BiasVarianceReport single = ensemble_bias_variance(gm, stump_learner, 1, 20, 11, opts);
    BiasVarianceReport bagged = ensemble_bias_variance(gm, stump_learner, 25, 20, 11, opts);
    CHECK(single.variance >= 0.0);
    CHECK(bagged.pe_mean <= single.pe_mean + 0.05);
    // averaging members stabilizes each repetition, so the spread between
    // mean repetition error and the vote shrinks
    CHECK(bagged.variance <= single.variance + 1e-12);
}

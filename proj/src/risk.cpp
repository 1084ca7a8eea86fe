#include "msel/risk.hpp"

#include <cmath>

#include "msel/mathutil.hpp"
#include "msel/rng.hpp"

namespace msel {

MomentReport moment_report(const Eigen::VectorXd& estimates, double true_value) {
    if (estimates.size() < 1) throw InvalidArgument("moment report needs at least one estimate");
    double n = static_cast<double>(estimates.size());
    double mean = estimates.mean();
    double bias = mean - true_value;
    double variance = (estimates.array() - mean).square().sum() / n;
    double mse = (estimates.array() - true_value).square().sum() / n;
    return MomentReport{bias, variance, mse, estimates.size()};
}

NoiseModel estimate_noise_variance(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
    if (y.size() != fitted.size()) throw InvalidArgument("size mismatch in noise estimate");
    if (y.size() < 2) throw InvalidArgument("noise estimate needs at least two instances");
    double s = (y - fitted).squaredNorm() / static_cast<double>(y.size() - 1);
    return NoiseModel{s, NoiseModel::Provenance::estimated};
}

double test_err(double err, Eigen::Index m, double sigma2) {
    if (m < 1) throw InvalidArgument("test size must be at least 1");
    if (sigma2 < 0) throw InvalidArgument("noise variance must be nonnegative");
    return err - static_cast<double>(m) * sigma2;
}

double sure_err(double err, Eigen::Index n, double sigma2, double df) {
    if (n < 1) throw InvalidArgument("sample size must be at least 1");
    if (sigma2 < 0) throw InvalidArgument("noise variance must be nonnegative");
    if (df < 0) throw InvalidArgument("degrees of freedom must be nonnegative");
    return err - static_cast<double>(n) * sigma2 + 2.0 * sigma2 * df;
}

RiskReport sure_report(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted, double df,
                       const NoiseModel& noise) {
    double err = sum_squared_error(y, fitted);
    return RiskReport{err, sure_err(err, y.size(), noise.sigma2, df), y.size(), noise.sigma2, df};
}

const std::vector<SteinFunction>& stein_functions() {
    static const std::vector<SteinFunction> fns = [] {
        std::vector<SteinFunction> v;
        v.push_back({"identity", [](double z) { return z; }, [](double) { return 1.0; }});
        v.push_back({"square", [](double z) { return z * z; }, [](double z) { return 2.0 * z; }});
        v.push_back({"cube", [](double z) { return z * z * z; },
                     [](double z) { return 3.0 * z * z; }});
        v.push_back({"sine", [](double z) { return std::sin(z); },
                     [](double z) { return std::cos(z); }});
        // argument clip keeps the Monte Carlo variance finite for any sigma
        v.push_back({"scaled_exp",
                     [](double z) { return std::exp(0.5 * std::clamp(z, -30.0, 30.0)); },
                     [](double z) {
                         return (z < -30.0 || z > 30.0) ? 0.0
                                                        : 0.5 * std::exp(0.5 * z);
                     },
                     1.0});
        return v;
    }();
    return fns;
}

SteinReport stein_lemma_check(const SteinFunction& fn, double mu, double sigma, int reps,
                              std::uint64_t seed) {
    if (sigma <= 0) throw InvalidArgument("sigma must be positive");
    if (reps < 2) throw InvalidArgument("stein check needs at least two samples");
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(mu, sigma);
    double s2 = sigma * sigma;

    double sum_a = 0.0, sum_b = 0.0;
    std::vector<double> paired(static_cast<std::size_t>(reps));
    for (int i = 0; i < reps; ++i) {
        double z = gauss(rng);
        double a = (z - mu) * fn.g(z);
        double b = fn.dg(z);
        sum_a += a;
        sum_b += b;
        paired[static_cast<std::size_t>(i)] = a - s2 * b;
    }
    double lhs = sum_a / reps;
    double rhs = s2 * (sum_b / reps);
    double se = sample_sd(paired) / std::sqrt(static_cast<double>(reps));
    return SteinReport{lhs, rhs, std::abs(lhs - rhs), se};
}

BiasVarianceReport ensemble_bias_variance(const GaussianMixture& gen, const BinaryLearner& learner,
                                          int k, int reps, std::uint64_t seed,
                                          const EnsembleBvOptions& opts) {
    if (k < 1) throw InvalidArgument("ensemble size must be at least 1");
    if (reps < 1) throw InvalidArgument("repetition count must be at least 1");
    if (opts.n_train < 2 || opts.n_test < 1) throw InvalidArgument("invalid sample sizes");

    Dataset test = sample_mixture(gen, opts.n_test, mix_seed(seed, 0));
    Eigen::Index m = test.n();

    Eigen::VectorXd bayes(m);
    for (Eigen::Index i = 0; i < m; ++i) bayes(i) = bayes_predict(gen, test.instance(i).features);

    auto error_rate = [&](const Eigen::VectorXd& pred) {
        double wrong = 0.0;
        for (Eigen::Index i = 0; i < m; ++i)
            if (pred(i) != test.label(i)) wrong += 1.0;
        return wrong / static_cast<double>(m);
    };

    Eigen::VectorXd vote_sum = Eigen::VectorXd::Zero(m);
    std::vector<double> rep_pe(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        Dataset train = sample_mixture(gen, opts.n_train, mix_seed(seed, 1 + static_cast<std::uint64_t>(r)));
        Eigen::VectorXd member_sum = Eigen::VectorXd::Zero(m);
        for (int j = 0; j < k; ++j) {
            std::uint64_t sj = mix_seed(seed, (static_cast<std::uint64_t>(r) << 20) + 1000 + static_cast<std::uint64_t>(j));
            BootstrapSample bs = bootstrap_sample(train, train.n(), 1.0, sj);
            BinaryModel model = learner(bs.data, mix_seed(sj, 7));
            for (Eigen::Index i = 0; i < m; ++i) member_sum(i) += model(test.instance(i).features);
        }
        Eigen::VectorXd rep_pred(m);
        for (Eigen::Index i = 0; i < m; ++i) rep_pred(i) = sign_pm(member_sum(i));
        rep_pe[static_cast<std::size_t>(r)] = error_rate(rep_pred);
        vote_sum += rep_pred;
    }

    Eigen::VectorXd vote_pred(m);
    for (Eigen::Index i = 0; i < m; ++i) vote_pred(i) = sign_pm(vote_sum(i));

    BiasVarianceReport rep;
    rep.pe_vote = error_rate(vote_pred);
    rep.pe_mean = stable_mean(rep_pe);
    rep.pe_bayes = error_rate(bayes);
    rep.bias = rep.pe_vote - rep.pe_bayes;
    rep.variance = rep.pe_mean - rep.pe_vote;
    return rep;
}

}  // namespace msel

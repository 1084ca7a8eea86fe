#include "msel/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "msel/mathutil.hpp"
#include "msel/rng.hpp"

namespace msel {

namespace {

constexpr double kLossClamp = 1e-12;

double clamp_loss(double L) { return std::clamp(L, kLossClamp, 1.0 - kLossClamp); }

void require_boost_data(const Dataset& ds) {
    if (ds.n() < 2) throw InvalidArgument("boosting needs at least two instances");
    if (!ds.binary_labels()) throw InvalidArgument("boosting requires labels in {-1, +1}");
}

Eigen::VectorXd normalized_weights(const Eigen::VectorXd& w, Eigen::Index n) {
    if (w.size() != n) throw InvalidArgument("weight length does not match instance count");
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (w(i) < 0) throw InvalidArgument("weights must be nonnegative");
        total += w(i);
    }
    if (total <= 0) throw InvalidArgument("weights must not all be zero");
    return w / total;
}

// Visits every candidate stump in canonical order (feature ascending,
// threshold ascending, polarity +1 before -1) with its weighted error under
// weights summing to 1.  Canonical order is what makes first-strictly-better
// acceptance reproduce the documented tie-breaking.
template <typename Visit>
void enumerate_stumps(const Dataset& ds, const Eigen::VectorXd& wn, Visit&& visit) {
    const Eigen::Index n = ds.n();
    const Eigen::Index d = ds.dim();
    const auto& X = ds.features();
    const auto& y = ds.labels();

    bool any_candidate = false;
    std::vector<int> order(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < d; ++j) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return X(a, j) < X(b, j); });

        double w_pos_total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (y(i) > 0) w_pos_total += wn(i);
        double w_neg_total = 1.0 - w_pos_total;

        // err(+1 polarity, t) = (weight of +1 labels at or below t)
        //                     + (weight of -1 labels above t)
        double w_pos_left = 0.0, w_neg_left = 0.0;
        std::size_t i = 0;
        while (i < order.size()) {
            double v = X(order[i], static_cast<Eigen::Index>(j));
            while (i < order.size() && X(order[i], static_cast<Eigen::Index>(j)) == v) {
                if (y(order[i]) > 0)
                    w_pos_left += wn(order[i]);
                else
                    w_neg_left += wn(order[i]);
                ++i;
            }
            if (i == order.size()) break;  // no gap above the largest value
            double next = X(order[i], static_cast<Eigen::Index>(j));
            double threshold = 0.5 * (v + next);
            double err_plus = w_pos_left + (w_neg_total - w_neg_left);
            any_candidate = true;
            visit(Stump{static_cast<int>(j), threshold, 1.0}, err_plus);
            visit(Stump{static_cast<int>(j), threshold, -1.0}, 1.0 - err_plus);
        }
    }
    if (!any_candidate)
        throw ComputationError("no admissible stump split: every feature is constant");
}

// strictly convex in beta, hence safe for golden-section search
double exp_loss_at(double beta, double L) {
    return std::exp(-beta) * (1.0 - L) + std::exp(beta) * L;
}

// The stump family is closed under polarity flip and a flipped stump with a
// negated coefficient scores identically, so coefficients are searched over
// beta >= 0 only; the lower-error polarity then wins the candidate scan.
std::pair<double, double> golden_min_beta(double L) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 20.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = exp_loss_at(x1, L), f2 = exp_loss_at(x2, L);
    for (int it = 0; it < 140; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = exp_loss_at(x1, L);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = exp_loss_at(x2, L);
        }
    }
    double beta = 0.5 * (a + b);
    return {beta, exp_loss_at(beta, L)};
}

}  // namespace

double stump_predict(const Stump& s, const Eigen::VectorXd& x) {
    if (s.feature < 0 || s.feature >= x.size())
        throw InvalidArgument("stump feature index out of range");
    return x(s.feature) > s.threshold ? s.polarity : -s.polarity;
}

StumpFit fit_stump(const Dataset& ds, const Eigen::VectorXd& weights) {
    require_boost_data(ds);
    Eigen::VectorXd wn = normalized_weights(weights, ds.n());

    StumpFit best;
    best.weighted_error = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    enumerate_stumps(ds, wn, [&](const Stump& s, double err) {
        if (err < best.weighted_error) {
            second = best.weighted_error;
            best.weighted_error = err;
            best.stump = s;
            best.bit_ties = 1;
        } else if (err == best.weighted_error) {
            ++best.bit_ties;
        } else {
            second = std::min(second, err);
        }
    });
    best.runner_up_gap = second - best.weighted_error;
    return best;
}

BoostModel adaboost_train(const Dataset& ds, int k, AlphaConvention convention) {
    require_boost_data(ds);
    if (k < 1) throw InvalidArgument("round count must be at least 1");

    const Eigen::Index n = ds.n();
    const auto& y = ds.labels();
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

    BoostModel m;
    m.convention = convention;
    m.members.reserve(static_cast<std::size_t>(k));
    m.alphas.resize(k);
    m.losses.resize(k);
    m.min_selection_gap = std::numeric_limits<double>::infinity();

    for (int j = 0; j < k; ++j) {
        StumpFit sf = fit_stump(ds, w);
        double L = clamp_loss(sf.weighted_error);
        double a_half = 0.5 * std::log((1.0 - L) / L);

        m.members.push_back(sf.stump);
        m.losses(j) = L;
        m.alphas(j) = (convention == AlphaConvention::full) ? 2.0 * a_half : a_half;
        m.min_selection_gap = std::min(m.min_selection_gap, sf.runner_up_gap);
        m.selection_tied = m.selection_tied || sf.bit_ties > 1;

        // shared trajectory for both conventions; renormalized each round
        double z = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double h = stump_predict(sf.stump, ds.instance(i).features);
            w(i) *= std::exp(-y(i) * a_half * h);
            z += w(i);
        }
        w /= z;
    }
    return m;
}

BoostModel stagewise_additive_fit(const Dataset& ds, int k) {
    require_boost_data(ds);
    if (k < 1) throw InvalidArgument("round count must be at least 1");

    const Eigen::Index n = ds.n();
    const auto& y = ds.labels();
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

    BoostModel m;
    m.convention = AlphaConvention::half;
    m.members.reserve(static_cast<std::size_t>(k));
    m.alphas.resize(k);
    m.losses.resize(k);
    m.min_selection_gap = std::numeric_limits<double>::infinity();

    for (int j = 0; j < k; ++j) {
        Stump best_stump;
        double best_obj = std::numeric_limits<double>::infinity();
        double best_beta = 0.0, best_L = 0.0;
        double err_best = std::numeric_limits<double>::infinity();
        double err_second = std::numeric_limits<double>::infinity();
        int err_ties = 1;
        enumerate_stumps(ds, w, [&](const Stump& s, double err) {
            auto [beta, obj] = golden_min_beta(clamp_loss(err));
            if (obj < best_obj) {
                best_obj = obj;
                best_stump = s;
                best_beta = beta;
                best_L = clamp_loss(err);
            }
            // same weighted-error margin diagnostics as fit_stump
            if (err < err_best) {
                err_second = err_best;
                err_best = err;
                err_ties = 1;
            } else if (err == err_best) {
                ++err_ties;
            } else {
                err_second = std::min(err_second, err);
            }
        });

        m.members.push_back(best_stump);
        m.alphas(j) = best_beta;
        m.losses(j) = best_L;
        m.min_selection_gap = std::min(m.min_selection_gap, err_second - err_best);
        m.selection_tied = m.selection_tied || err_ties > 1;

        double z = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double h = stump_predict(best_stump, ds.instance(i).features);
            w(i) *= std::exp(-y(i) * best_beta * h);
            z += w(i);
        }
        w /= z;
    }
    return m;
}

double boost_score(const BoostModel& m, const Eigen::VectorXd& x) {
    if (m.members.empty()) throw InvalidArgument("model has no members");
    double s = 0.0;
    for (std::size_t j = 0; j < m.members.size(); ++j)
        s += m.alphas(static_cast<Eigen::Index>(j)) * stump_predict(m.members[j], x);
    return s;
}

double boost_predict(const BoostModel& m, const Eigen::VectorXd& x) {
    return sign_pm(boost_score(m, x));
}

double training_error(const BoostModel& m, const Dataset& ds) {
    double wrong = 0.0;
    for (Eigen::Index i = 0; i < ds.n(); ++i)
        if (boost_predict(m, ds.instance(i).features) != ds.label(i)) wrong += 1.0;
    return wrong / static_cast<double>(ds.n());
}

Eigen::VectorXd boost_margins(const BoostModel& m, const Dataset& ds) {
    require_boost_data(ds);
    double total = m.alphas.sum();
    if (!(total > 0)) throw ComputationError("margins undefined: alphas sum to zero or less");
    Eigen::VectorXd margins(ds.n());
    for (Eigen::Index i = 0; i < ds.n(); ++i)
        margins(i) = ds.label(i) * boost_score(m, ds.instance(i).features) / total;
    return margins;
}

double margin_fraction(const Eigen::VectorXd& margins, double theta) {
    if (margins.size() == 0) throw InvalidArgument("empty margin vector");
    double count = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i)
        if (margins(i) <= theta) count += 1.0;
    return count / static_cast<double>(margins.size());
}

double error_bound_product(const BoostModel& m) {
    double log_prod = 0.0;
    for (Eigen::Index j = 0; j < m.losses.size(); ++j) {
        double L = m.losses(j);
        log_prod += std::log(2.0) + 0.5 * (std::log(L) + std::log(1.0 - L));
    }
    return std::exp(log_prod);
}

double generalization_bound(const BoostModel& m, double theta) {
    if (m.convention != AlphaConvention::half)
        throw InvalidArgument("margin bound requires half-convention alphas");
    if (theta < 0 || theta >= 1) throw InvalidArgument("theta must lie in [0, 1)");
    double log_b = static_cast<double>(m.losses.size()) * std::log(2.0);
    for (Eigen::Index j = 0; j < m.losses.size(); ++j) {
        double L = m.losses(j);
        log_b += 0.5 * ((1.0 - theta) * std::log(L) + (1.0 + theta) * std::log(1.0 - L));
    }
    return std::exp(log_b);
}

double edge_bound(double xi, double theta, int k) {
    if (xi <= 0 || xi >= 0.5) throw InvalidArgument("edge must lie in (0, 0.5)");
    if (theta < 0 || theta >= 1) throw InvalidArgument("theta must lie in [0, 1)");
    if (k < 1) throw InvalidArgument("round count must be at least 1");
    double log_b = 0.5 * static_cast<double>(k) *
                   ((1.0 - theta) * std::log(1.0 - 2.0 * xi) +
                    (1.0 + theta) * std::log(1.0 + 2.0 * xi));
    return std::exp(log_b);
}

BaggedModel bag_train(const Dataset& ds, int k, const MemberLearner& learner,
                      Eigen::Index sample_size, double feature_fraction, Aggregation aggregation,
                      std::uint64_t seed) {
    if (k < 1) throw InvalidArgument("ensemble size must be at least 1");
    if (!learner) throw InvalidArgument("missing base learner");
    Eigen::Index size = sample_size == 0 ? ds.n() : sample_size;

    BaggedModel m;
    m.aggregation = aggregation;
    m.input_dim = ds.dim();
    m.members.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        std::uint64_t sj = mix_seed(seed, static_cast<std::uint64_t>(j));
        BootstrapSample bs = bootstrap_sample(ds, size, feature_fraction, sj);
        auto model = learner(bs.data, mix_seed(sj, 0x6261676dull));
        m.members.push_back(BaggedModel::Member{std::move(model), std::move(bs.feature_idx)});
    }
    return m;
}

double bag_predict(const BaggedModel& m, const Eigen::VectorXd& x) {
    if (m.members.empty()) throw InvalidArgument("model has no members");
    if (x.size() != m.input_dim) throw InvalidArgument("input dimension mismatch");
    double sum = 0.0;
    for (const auto& member : m.members) {
        Eigen::VectorXd sub(static_cast<Eigen::Index>(member.feature_idx.size()));
        for (std::size_t j = 0; j < member.feature_idx.size(); ++j)
            sub(static_cast<Eigen::Index>(j)) = x(member.feature_idx[j]);
        sum += member.model(sub);
    }
    double avg = sum / static_cast<double>(m.members.size());
    return m.aggregation == Aggregation::mean ? avg : sign_pm(avg);
}

double bagging_variance_theory(double s, double c, int k) {
    if (s < 0) throw InvalidArgument("variance must be nonnegative");
    if (std::abs(c) > s) throw InvalidArgument("covariance magnitude cannot exceed the variance");
    if (k < 1) throw InvalidArgument("ensemble size must be at least 1");
    double kd = static_cast<double>(k);
    return s / kd + c * (kd - 1.0) / kd;
}

BaggingMcReport bagging_variance_mc(double s, double c, int k, int reps, std::uint64_t seed) {
    double theory = bagging_variance_theory(s, c, k);  // validates s, c, k
    if (reps < 2) throw InvalidArgument("variance estimate needs at least two replicates");
    if (k > 1 && c < -s / static_cast<double>(k - 1) - 1e-12)
        throw InvalidArgument("equicorrelated covariance is not positive semidefinite");

    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> averages(static_cast<std::size_t>(reps));
    if (c >= 0) {
        double shared_sd = std::sqrt(c);
        double own_sd = std::sqrt(s - c);
        for (int r = 0; r < reps; ++r) {
            double shared = shared_sd * gauss(rng);
            double sum = 0.0;
            for (int j = 0; j < k; ++j) sum += shared + own_sd * gauss(rng);
            averages[static_cast<std::size_t>(r)] = sum / static_cast<double>(k);
        }
    } else {
        Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(k, k, c);
        cov.diagonal().setConstant(s);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
        if (es.info() != Eigen::Success) throw ComputationError("covariance factorization failed");
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        Eigen::MatrixXd factor = es.eigenvectors() * ev.asDiagonal();
        Eigen::VectorXd z(k);
        for (int r = 0; r < reps; ++r) {
            for (int j = 0; j < k; ++j) z(j) = gauss(rng);
            averages[static_cast<std::size_t>(r)] = (factor * z).mean();
        }
    }

    double mean = 0.0;
    for (double a : averages) mean += a;
    mean /= static_cast<double>(reps);
    double var = 0.0;
    for (double a : averages) var += (a - mean) * (a - mean);
    var /= static_cast<double>(reps - 1);

    BaggingMcReport rep;
    rep.empirical_var = var;
    rep.theory_var = theory;
    rep.se = theory * std::sqrt(2.0 / static_cast<double>(reps - 1));
    return rep;
}

}  // namespace msel

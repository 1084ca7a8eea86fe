#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "msel/errors.hpp"

namespace msel {

struct Instance {
    Eigen::VectorXd features;
    double label = 0.0;
};

/// Immutable supervised sample: an N x d feature matrix, N labels, and
/// (for synthetic data) the noise-free target values.
class Dataset {
public:
    Dataset(Eigen::MatrixXd features, Eigen::VectorXd labels,
            std::optional<Eigen::VectorXd> true_values = std::nullopt);

    Eigen::Index n() const { return features_.rows(); }
    Eigen::Index dim() const { return features_.cols(); }

    const Eigen::MatrixXd& features() const { return features_; }
    const Eigen::VectorXd& labels() const { return labels_; }
    const std::optional<Eigen::VectorXd>& true_values() const { return true_values_; }

    Instance instance(Eigen::Index i) const;
    double label(Eigen::Index i) const { return labels_(i); }

    /// True when every label is exactly -1 or +1.
    bool binary_labels() const;

    /// Row subset in the given order (indices may repeat, as in a bootstrap).
    Dataset subset(const std::vector<int>& rows) const;

    /// Column subset; feature indices must be strictly increasing.
    Dataset restrict_features(const std::vector<int>& feature_idx) const;

private:
    Eigen::MatrixXd features_;
    Eigen::VectorXd labels_;
    std::optional<Eigen::VectorXd> true_values_;
};

/// Disjoint index sets covering 0..N-1; validation part may be empty.
struct Split {
    std::vector<int> train_idx;
    std::vector<int> test_idx;
    std::vector<int> val_idx;
};

struct Polynomial {
    std::vector<double> coeffs;  // c0 + c1 t + c2 t^2 + ...
};

struct Sine {
    double amplitude = 1.0;
    double frequency = 1.0;  // f(t) = amplitude * sin(frequency * t)
};

/// Piecewise-linear table on sorted knots; 1-D domains only.
struct Tabulated {
    std::vector<double> ts;
    std::vector<double> values;
};

/// Generator for regression data: y = f(x) + sigma * noise, inputs uniform
/// over the domain box.  For d > 1 the scalar functions act on the
/// coordinate sum, so a degree-1 polynomial yields a linear model in x.
struct SyntheticSpec {
    std::variant<Polynomial, Sine, Tabulated> true_function = Sine{1.0, 1.0};
    double noise_sigma = 0.0;
    std::vector<std::pair<double, double>> domain = {{0.0, 1.0}};
};

double true_value_at(const SyntheticSpec& spec, const Eigen::VectorXd& x);

/// Binary-classification generator: two isotropic Gaussians with equal
/// priors, labels +1 (mean_pos) and -1 (mean_neg).
struct GaussianMixture {
    Eigen::VectorXd mean_pos;
    Eigen::VectorXd mean_neg;
    double sigma = 1.0;
};

/// Label column selected either by header name or by 0-based position.
using LabelColumn = std::variant<std::string, int>;

/// Parse a numeric CSV with a header row.  Errors name the offending row
/// and column.  All non-label columns become features in file order.
Dataset load_csv(const std::string& path, const LabelColumn& label);

/// Seed-deterministic shuffle split.  Fractions must be nonnegative and sum
/// to 1; sizes are floor(fraction * N) with the remainder going to train.
/// Stratified mode requires binary labels and balances each class.
Split split_holdout(const Dataset& ds, double train_fraction, double test_fraction,
                    double val_fraction, std::uint64_t seed, bool stratified = false);

/// K index sets whose sizes differ by at most one; the first (N mod K)
/// partitions take the extra instance.  2 <= K <= N.
std::vector<std::vector<int>> kfold_partitions(const Dataset& ds, int K, std::uint64_t seed,
                                               bool stratified = false);

struct BootstrapSample {
    Dataset data;
    std::vector<int> feature_idx;  // ascending; size ceil(feature_fraction * d)
};

/// Uniform sampling with replacement; feature_fraction < 1 also draws a
/// random feature subset (without replacement) and restricts to it.
BootstrapSample bootstrap_sample(const Dataset& ds, Eigen::Index size, double feature_fraction,
                                 std::uint64_t seed);

Dataset generate_synthetic(const SyntheticSpec& spec, Eigen::Index n, std::uint64_t seed);

Dataset sample_mixture(const GaussianMixture& gm, Eigen::Index n, std::uint64_t seed);

/// Bayes-optimal rule for the mixture (equal priors, shared sigma):
/// +1 iff x is at least as close to mean_pos as to mean_neg.
double bayes_predict(const GaussianMixture& gm, const Eigen::VectorXd& x);

}  // namespace msel

#include "msel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "msel/rng.hpp"

namespace msel {

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) throw InvalidArgument(std::string(what) + " contains a non-finite value");
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd features, Eigen::VectorXd labels,
                 std::optional<Eigen::VectorXd> true_values)
    : features_(std::move(features)), labels_(std::move(labels)), true_values_(std::move(true_values)) {
    if (features_.rows() == 0) throw InvalidArgument("dataset must contain at least one instance");
    if (labels_.size() != features_.rows())
        throw InvalidArgument("label count does not match instance count");
    if (true_values_ && true_values_->size() != features_.rows())
        throw InvalidArgument("true-value count does not match instance count");
    check_finite(features_, "feature matrix");
    check_finite(labels_, "label vector");
    if (true_values_) check_finite(*true_values_, "true-value vector");
}

Instance Dataset::instance(Eigen::Index i) const {
    if (i < 0 || i >= n()) throw InvalidArgument("instance index out of range");
    return Instance{features_.row(i).transpose(), labels_(i)};
}

bool Dataset::binary_labels() const {
    for (Eigen::Index i = 0; i < n(); ++i)
        if (labels_(i) != 1.0 && labels_(i) != -1.0) return false;
    return true;
}

Dataset Dataset::subset(const std::vector<int>& rows) const {
    if (rows.empty()) throw InvalidArgument("row subset is empty");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), dim());
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    std::optional<Eigen::VectorXd> f;
    if (true_values_) f = Eigen::VectorXd(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        int i = rows[k];
        if (i < 0 || i >= n()) throw InvalidArgument("row subset index out of range");
        x.row(static_cast<Eigen::Index>(k)) = features_.row(i);
        y(static_cast<Eigen::Index>(k)) = labels_(i);
        if (f) (*f)(static_cast<Eigen::Index>(k)) = (*true_values_)(i);
    }
    return Dataset(std::move(x), std::move(y), std::move(f));
}

Dataset Dataset::restrict_features(const std::vector<int>& feature_idx) const {
    if (feature_idx.empty()) throw InvalidArgument("feature subset is empty");
    Eigen::MatrixXd x(n(), static_cast<Eigen::Index>(feature_idx.size()));
    int prev = -1;
    for (std::size_t k = 0; k < feature_idx.size(); ++k) {
        int j = feature_idx[k];
        if (j < 0 || j >= dim()) throw InvalidArgument("feature subset index out of range");
        if (j <= prev) throw InvalidArgument("feature subset must be strictly increasing");
        prev = j;
        x.col(static_cast<Eigen::Index>(k)) = features_.col(j);
    }
    return Dataset(std::move(x), labels_, true_values_);
}

double true_value_at(const SyntheticSpec& spec, const Eigen::VectorXd& x) {
    if (x.size() == 0) throw InvalidArgument("input point is empty");
    double t = x.sum();
    if (const auto* p = std::get_if<Polynomial>(&spec.true_function)) {
        if (p->coeffs.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
        double v = 0.0;
        for (auto it = p->coeffs.rbegin(); it != p->coeffs.rend(); ++it) v = v * t + *it;
        return v;
    }
    if (const auto* s = std::get_if<Sine>(&spec.true_function)) {
        return s->amplitude * std::sin(s->frequency * t);
    }
    const auto& tab = std::get<Tabulated>(spec.true_function);
    if (x.size() != 1) throw InvalidArgument("tabulated true functions support 1-D inputs only");
    if (tab.ts.size() < 2 || tab.ts.size() != tab.values.size())
        throw InvalidArgument("tabulated true function needs matching ts/values with at least two knots");
    if (!std::is_sorted(tab.ts.begin(), tab.ts.end()))
        throw InvalidArgument("tabulated knots must be sorted ascending");
    if (t <= tab.ts.front()) return tab.values.front();
    if (t >= tab.ts.back()) return tab.values.back();
    auto hi = std::upper_bound(tab.ts.begin(), tab.ts.end(), t);
    std::size_t k = static_cast<std::size_t>(hi - tab.ts.begin());
    double t0 = tab.ts[k - 1], t1 = tab.ts[k];
    double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * tab.values[k - 1] + w * tab.values[k];
}

Dataset load_csv(const std::string& path, const LabelColumn& label) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("file has no header row: " + path);
    std::vector<std::string> header = split_line(line);
    if (header.empty()) throw InvalidArgument("header row is empty: " + path);

    int label_col = -1;
    if (const auto* name = std::get_if<std::string>(&label)) {
        for (std::size_t j = 0; j < header.size(); ++j)
            if (header[j] == *name) label_col = static_cast<int>(j);
        if (label_col < 0) throw InvalidArgument("label column '" + *name + "' not found in header");
    } else {
        label_col = std::get<int>(label);
        if (label_col < 0 || label_col >= static_cast<int>(header.size()))
            throw InvalidArgument("label column index " + std::to_string(label_col) +
                                  " out of range for " + std::to_string(header.size()) + " columns");
    }

    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw InvalidArgument("row " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
        std::vector<double> vals(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const std::string& c = cells[j];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc{} || ptr != c.data() + c.size())
                throw InvalidArgument("non-numeric value '" + c + "' at row " +
                                      std::to_string(line_no) + ", column '" + header[j] + "'");
            vals[j] = v;
        }
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw InvalidArgument("file has no data rows: " + path);

    Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::Index d = static_cast<Eigen::Index>(header.size()) - 1;
    if (d == 0) throw InvalidArgument("file has no feature columns: " + path);
    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index jj = 0;
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (static_cast<int>(j) == label_col) {
                y(i) = rows[static_cast<std::size_t>(i)][j];
            } else {
                x(i, jj++) = rows[static_cast<std::size_t>(i)][j];
            }
        }
    }
    return Dataset(std::move(x), std::move(y));
}

namespace {

// floor-sized test/val parts, remainder joins train
struct PartSizes {
    int train, test, val;
};

PartSizes part_sizes(int n, double tf, double ef, double vf) {
    int ntr = static_cast<int>(std::floor(tf * n));
    int nte = static_cast<int>(std::floor(ef * n));
    int nva = static_cast<int>(std::floor(vf * n));
    ntr += n - (ntr + nte + nva);
    return {ntr, nte, nva};
}

void validate_fractions(double tf, double ef, double vf) {
    if (tf < 0 || ef < 0 || vf < 0) throw InvalidArgument("split fractions must be nonnegative");
    if (std::abs(tf + ef + vf - 1.0) > 1e-9) throw InvalidArgument("split fractions must sum to 1");
}

}  // namespace

Split split_holdout(const Dataset& ds, double train_fraction, double test_fraction,
                    double val_fraction, std::uint64_t seed, bool stratified) {
    validate_fractions(train_fraction, test_fraction, val_fraction);
    int n = static_cast<int>(ds.n());
    if (n < 2) throw InvalidArgument("holdout split needs at least two instances");

    Split out;
    auto deal = [&](std::vector<int>& idx, std::uint64_t s) {
        auto rng = make_rng(s);
        std::shuffle(idx.begin(), idx.end(), rng);
        PartSizes sz = part_sizes(static_cast<int>(idx.size()), train_fraction, test_fraction, val_fraction);
        auto it = idx.begin();
        out.train_idx.insert(out.train_idx.end(), it, it + sz.train);
        it += sz.train;
        out.test_idx.insert(out.test_idx.end(), it, it + sz.test);
        it += sz.test;
        out.val_idx.insert(out.val_idx.end(), it, it + sz.val);
    };

    if (stratified) {
        if (!ds.binary_labels())
            throw InvalidArgument("stratified split requires labels in {-1, +1}");
        std::vector<int> pos, neg;
        for (int i = 0; i < n; ++i) (ds.label(i) > 0 ? pos : neg).push_back(i);
        if (!pos.empty()) deal(pos, mix_seed(seed, 0));
        if (!neg.empty()) deal(neg, mix_seed(seed, 1));
    } else {
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        deal(idx, seed);
    }
    if (out.train_idx.empty()) throw InvalidArgument("holdout split produced an empty training set");
    return out;
}

std::vector<std::vector<int>> kfold_partitions(const Dataset& ds, int K, std::uint64_t seed,
                                               bool stratified) {
    int n = static_cast<int>(ds.n());
    if (K < 2) throw InvalidArgument("K must be at least 2");
    if (K > n) throw InvalidArgument("K exceeds the number of instances");

    std::vector<std::vector<int>> folds(static_cast<std::size_t>(K));
    if (stratified) {
        if (!ds.binary_labels())
            throw InvalidArgument("stratified partitions require labels in {-1, +1}");
        std::vector<int> pos, neg;
        for (int i = 0; i < n; ++i) (ds.label(i) > 0 ? pos : neg).push_back(i);
        auto rng_p = make_rng(mix_seed(seed, 0));
        auto rng_n = make_rng(mix_seed(seed, 1));
        std::shuffle(pos.begin(), pos.end(), rng_p);
        std::shuffle(neg.begin(), neg.end(), rng_n);
        // one combined dealing sequence keeps overall fold sizes within one
        std::vector<int> order = pos;
        order.insert(order.end(), neg.begin(), neg.end());
        for (std::size_t k = 0; k < order.size(); ++k)
            folds[k % static_cast<std::size_t>(K)].push_back(order[k]);
    } else {
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        auto rng = make_rng(seed);
        std::shuffle(idx.begin(), idx.end(), rng);
        int base = n / K, extra = n % K;
        auto it = idx.begin();
        for (int k = 0; k < K; ++k) {
            int sz = base + (k < extra ? 1 : 0);
            folds[static_cast<std::size_t>(k)].assign(it, it + sz);
            it += sz;
        }
    }
    return folds;
}

BootstrapSample bootstrap_sample(const Dataset& ds, Eigen::Index size, double feature_fraction,
                                 std::uint64_t seed) {
    if (size < 1) throw InvalidArgument("bootstrap size must be at least 1");
    if (feature_fraction <= 0.0 || feature_fraction > 1.0)
        throw InvalidArgument("feature fraction must lie in (0, 1]");

    auto rng = make_rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(ds.n()) - 1);
    std::vector<int> rows(static_cast<std::size_t>(size));
    for (auto& r : rows) r = pick(rng);

    int d = static_cast<int>(ds.dim());
    int q = static_cast<int>(std::ceil(feature_fraction * d));
    std::vector<int> fidx(static_cast<std::size_t>(d));
    std::iota(fidx.begin(), fidx.end(), 0);
    if (q < d) {
        std::shuffle(fidx.begin(), fidx.end(), rng);
        fidx.resize(static_cast<std::size_t>(q));
        std::sort(fidx.begin(), fidx.end());
    }

    Dataset sub = ds.subset(rows);
    if (q < d) sub = sub.restrict_features(fidx);
    return BootstrapSample{std::move(sub), std::move(fidx)};
}

Dataset generate_synthetic(const SyntheticSpec& spec, Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample size must be at least 1");
    if (spec.noise_sigma < 0) throw InvalidArgument("noise sigma must be nonnegative");
    if (spec.domain.empty()) throw InvalidArgument("domain must have at least one dimension");
    for (auto [lo, hi] : spec.domain)
        if (!(lo < hi)) throw InvalidArgument("each domain interval needs lo < hi");

    Eigen::Index d = static_cast<Eigen::Index>(spec.domain.size());
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd f(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            auto [lo, hi] = spec.domain[static_cast<std::size_t>(j)];
            std::uniform_real_distribution<double> unif(lo, hi);
            x(i, j) = unif(rng);
        }
        f(i) = true_value_at(spec, x.row(i).transpose());
        y(i) = f(i) + spec.noise_sigma * gauss(rng);
    }
    return Dataset(std::move(x), std::move(y), std::move(f));
}

Dataset sample_mixture(const GaussianMixture& gm, Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample size must be at least 1");
    if (gm.sigma <= 0) throw InvalidArgument("mixture sigma must be positive");
    if (gm.mean_pos.size() == 0 || gm.mean_pos.size() != gm.mean_neg.size())
        throw InvalidArgument("mixture means must be nonempty and share a dimension");

    Eigen::Index d = gm.mean_pos.size();
    auto rng = make_rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        bool positive = coin(rng);
        const Eigen::VectorXd& mu = positive ? gm.mean_pos : gm.mean_neg;
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = mu(j) + gm.sigma * gauss(rng);
        y(i) = positive ? 1.0 : -1.0;
    }
    return Dataset(std::move(x), std::move(y));
}

double bayes_predict(const GaussianMixture& gm, const Eigen::VectorXd& x) {
    if (x.size() != gm.mean_pos.size()) throw InvalidArgument("input dimension mismatch");
    double dp = (x - gm.mean_pos).squaredNorm();
    double dn = (x - gm.mean_neg).squaredNorm();
    return dp <= dn ? 1.0 : -1.0;
}

}  // namespace msel

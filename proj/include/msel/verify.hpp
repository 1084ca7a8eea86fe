#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msel::verify {

/// One measured quantity against its pinned tolerance.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct SuiteResult {
    std::string name;
    std::string group;  // risk | crossval | regularize | ensemble
    std::vector<CheckResult> checks;
    bool passed() const;
};

// crossval
SuiteResult check_loocv_shortcut(std::uint64_t seed);       // retraining vs leverage residuals
SuiteResult check_gcv_constant_leverage(std::uint64_t seed);

// risk
SuiteResult check_sure_unbiasedness(std::uint64_t seed);
SuiteResult check_stein_identity(std::uint64_t seed);

// regularize
SuiteResult check_ridge_spectral(std::uint64_t seed);       // solve route vs eigen route
SuiteResult check_soft_threshold_grid(std::uint64_t seed);
SuiteResult check_lasso_solutions(std::uint64_t seed);
SuiteResult check_early_stopping(std::uint64_t seed);
SuiteResult check_noise_injection(std::uint64_t seed);

// ensemble
SuiteResult check_bagging_variance(std::uint64_t seed);
SuiteResult check_boost_bounds(std::uint64_t seed);
SuiteResult check_stagewise_equivalence(std::uint64_t seed);

/// All twelve suites in a fixed order.
std::vector<SuiteResult> run_all(std::uint64_t seed);

/// The suites belonging to one group name.
std::vector<SuiteResult> run_group(const std::string& group, std::uint64_t seed);

const std::vector<std::string>& group_names();

}  // namespace msel::verify

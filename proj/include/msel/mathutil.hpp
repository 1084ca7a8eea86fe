#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "msel/errors.hpp"

namespace msel {

/// Sign with sign(0) = +1, the convention used for every vote and stump.
inline double sign_pm(double v) { return v >= 0.0 ? 1.0 : -1.0; }

/// Mean over a copy sorted ascending, so the result does not depend on the
/// order the values were produced in (fold order, index order, ...).
inline double stable_mean(std::vector<double> v) {
    if (v.empty()) throw InvalidArgument("mean of an empty sequence");
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) throw InvalidArgument("standard deviation needs at least two values");
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline double sum_squared_error(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
    if (y.size() != fitted.size()) throw InvalidArgument("size mismatch in squared error");
    if (y.size() == 0) throw InvalidArgument("squared error of empty vectors");
    return (y - fitted).squaredNorm();
}

}  // namespace msel

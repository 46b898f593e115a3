#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace ubo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLogTwoPi = 1.8378770664093454836;

/// Standard normal density.
inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}

/// Standard normal CDF, evaluated through erfc for tail accuracy.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

inline void clamp_to_unit_cube(Vec& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x[i] = std::min(1.0, std::max(0.0, x[i]));
    }
}

inline bool in_unit_cube(const Vec& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x[i] >= 0.0 && x[i] <= 1.0)) return false;
    }
    return true;
}

}  // namespace ubo

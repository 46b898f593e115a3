#pragma once

#include <cmath>
#include <stdexcept>

#include "ubo/math.hpp"

namespace ubo {

/// Matern-5/2 kernel hyperparameters, stored in log space for sampling.
/// The observation-noise variance is a fixed configuration value and is
/// never sampled.
struct KernelHyperparameters {
    Vec log_lengthscales;
    double log_signal_variance = 0.0;
    double observation_noise_variance = 0.0;

    static KernelHyperparameters unit(Eigen::Index dimension,
                                      double noise_variance = 0.0) {
        KernelHyperparameters h;
        h.log_lengthscales = Vec::Zero(dimension);
        h.log_signal_variance = 0.0;
        h.observation_noise_variance = noise_variance;
        return h;
    }

    double lengthscale(Eigen::Index i) const {
        return std::exp(log_lengthscales[i]);
    }
    double signal_variance() const { return std::exp(log_signal_variance); }
    Eigen::Index dimension() const { return log_lengthscales.size(); }

    void validate() const {
        if (observation_noise_variance < 0.0 ||
            !std::isfinite(observation_noise_variance)) {
            throw std::invalid_argument(
                "KernelHyperparameters: observation noise variance must be "
                "finite and >= 0");
        }
        if (!log_lengthscales.allFinite() ||
            !std::isfinite(log_signal_variance)) {
            throw std::invalid_argument(
                "KernelHyperparameters: log parameters must be finite");
        }
    }
};

/// Matern-5/2 covariance as a function of Euclidean (or pre-scaled) distance:
///   sf2 * (1 + sqrt(5) r / l + 5 r^2 / (3 l^2)) * exp(-sqrt(5) r / l)
inline double matern52(double r, double lengthscale, double signal_variance) {
    if (!(lengthscale > 0.0)) {
        throw std::invalid_argument("matern52: lengthscale must be > 0");
    }
    if (!(signal_variance > 0.0)) {
        throw std::invalid_argument("matern52: signal variance must be > 0");
    }
    if (r < 0.0) {
        throw std::invalid_argument("matern52: distance must be >= 0");
    }
    const double s = std::sqrt(5.0) * r / lengthscale;
    return signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

/// Anisotropic (ARD) kernel value between two points: each coordinate
/// difference is scaled by its own lengthscale before the radial form.
inline double kernel_value(const Vec& a, const Vec& b,
                           const KernelHyperparameters& hyp) {
    double r2 = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double u = (a[k] - b[k]) / hyp.lengthscale(k);
        r2 += u * u;
    }
    return matern52(std::sqrt(r2), 1.0, hyp.signal_variance());
}

}  // namespace ubo

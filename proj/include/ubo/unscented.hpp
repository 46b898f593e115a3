#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ubo/errors.hpp"
#include "ubo/math.hpp"

namespace ubo {

/// Isotropic input noise: executed queries are perturbed by N(0, sigma_x^2 I).
struct InputNoise {
    double sigma_x = 0.0;

    void validate() const {
        if (!(sigma_x >= 0.0) || !std::isfinite(sigma_x)) {
            throw std::invalid_argument("InputNoise: sigma_x must be >= 0");
        }
    }
};

/// The 2d+1 deterministic samples of the unscented transform around a
/// center point, with their weights. Points are stored already clamped to
/// the unit hypercube; weights are left untouched by the clamping.
struct SigmaPointSet {
    Mat points;   // (2d+1) x d
    Vec weights;  // 2d+1
    Vec center;

    Eigen::Index count() const { return points.rows(); }
    Vec point(Eigen::Index i) const { return points.row(i).transpose(); }
};

/// Domain handling for off-center sigma points.
enum class SigmaBounds {
    unit_cube,  // clamp coordinate-wise into [0,1] (the optimizer's domain)
    none,       // leave points where the transform puts them
};

/// Sigma points for an isotropic Gaussian at `center`:
///   x0 = center, x+-(i) = center +- sqrt(d+k) * sigma_x * e_i
/// with weights w0 = k/(d+k), w+-(i) = 1/(2(d+k)).
inline SigmaPointSet sigma_points(const Vec& center, const InputNoise& noise,
                                  double k,
                                  SigmaBounds bounds = SigmaBounds::unit_cube) {
    noise.validate();
    const Eigen::Index d = center.size();
    const double dk = static_cast<double>(d) + k;
    if (!(dk > 0.0)) {
        throw std::invalid_argument(
            "sigma_points: d + k must be > 0 (k = -3 requires d >= 4)");
    }
    const double spread = std::sqrt(dk) * noise.sigma_x;

    SigmaPointSet sp;
    sp.center = center;
    sp.points.resize(2 * d + 1, d);
    sp.weights.resize(2 * d + 1);
    sp.points.row(0) = center.transpose();
    sp.weights[0] = k / dk;
    const double side_weight = 1.0 / (2.0 * dk);
    for (Eigen::Index i = 0; i < d; ++i) {
        Vec plus = center;
        Vec minus = center;
        plus[i] += spread;
        minus[i] -= spread;
        if (bounds == SigmaBounds::unit_cube) {
            clamp_to_unit_cube(plus);
            clamp_to_unit_cube(minus);
        }
        sp.points.row(1 + i) = plus.transpose();
        sp.points.row(1 + d + i) = minus.transpose();
        sp.weights[1 + i] = side_weight;
        sp.weights[1 + d + i] = side_weight;
    }
    return sp;
}

/// Transformed mean of a scalar function over the sigma points:
///   sum_i w(i) f(x(i))
template <typename F>
double unscented_mean(F&& f, const SigmaPointSet& sp) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < sp.count(); ++i) {
        const Vec x = sp.point(i);
        const double v = f(x);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "unscented_mean: non-finite value at sigma point " << i
                << " (" << x.transpose() << ")";
            throw evaluation_error(msg.str());
        }
        total += sp.weights[i] * v;
    }
    return total;
}

}  // namespace ubo

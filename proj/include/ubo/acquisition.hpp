#pragma once

#include <algorithm>
#include <cmath>

#include "ubo/gp.hpp"
#include "ubo/math.hpp"
#include "ubo/unscented.hpp"

namespace ubo {

/// Expected improvement over the hyperparameter mixture, maximization
/// convention, averaged over the m components:
///   EI = 1/m sum_i [(mu_i - y_best) Phi(z_i) + sigma_i phi(z_i)],
///   z_i = (mu_i - y_best) / sigma_i.
/// The sigma_i = 0 component degenerates to max(0, mu_i - y_best).
inline double expected_improvement(const PosteriorPrediction& pred,
                                   double y_best) {
    const Eigen::Index m = pred.size();
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double delta = pred.means[i] - y_best;
        const double var = pred.variances[i];
        if (var <= 0.0) {
            total += std::max(0.0, delta);
            continue;
        }
        const double sigma = std::sqrt(var);
        const double z = delta / sigma;
        total += delta * normal_cdf(z) + sigma * normal_pdf(z);
    }
    return std::max(0.0, total / static_cast<double>(m));
}

/// Unscented expected improvement: the weighted sigma-point average of EI
/// around a candidate query.
template <typename EiAt>
double unscented_expected_improvement(EiAt&& ei_at, const SigmaPointSet& sp) {
    return unscented_mean(std::forward<EiAt>(ei_at), sp);
}

}  // namespace ubo

#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ubo/errors.hpp"
#include "ubo/math.hpp"
#include "ubo/rng.hpp"

namespace ubo {

struct AcquisitionOptimum {
    Vec point;
    double value;
};

namespace detail {

inline void require_finite_acquisition(double value, const Vec& probe) {
    if (std::isfinite(value)) {
        return;
    }
    std::ostringstream msg;
    msg << "maximize_acquisition: non-finite acquisition value " << value
        << " at probe (";
    for (Eigen::Index i = 0; i < probe.size(); ++i) {
        msg << (i ? ", " : "") << probe[i];
    }
    msg << ")";
    throw evaluation_error(msg.str());
}

}  // namespace detail

/// Derivative-free maximization over the unit cube in two phases: a uniform
/// scatter spending ceil(0.9 * budget) evaluations, then coordinate descent
/// from the best scatter point with ten step-halving rounds (initial step
/// 0.1), capped by the remaining budget. Never evaluates outside the cube
/// and never spends more than `budget` evaluations.
template <typename F>
AcquisitionOptimum maximize_acquisition(F&& objective, Eigen::Index dimension,
                                        int budget, Rng& rng) {
    if (dimension < 1) {
        throw std::invalid_argument("maximize_acquisition: dimension must be >= 1");
    }
    if (budget < 1) {
        throw std::invalid_argument("maximize_acquisition: budget must be >= 1");
    }

    const int scatter_count = static_cast<int>(std::ceil(0.9 * budget));
    int evaluations_left = budget;

    Vec best_point(dimension);
    double best_value = 0.0;
    for (int i = 0; i < scatter_count && evaluations_left > 0; ++i) {
        Vec candidate(dimension);
        for (Eigen::Index c = 0; c < dimension; ++c) {
            candidate[c] = rng.uniform01();
        }
        --evaluations_left;
        const double v = objective(candidate);
        detail::require_finite_acquisition(v, candidate);
        if (i == 0 || v > best_value) {
            best_point = std::move(candidate);
            best_value = v;
        }
    }

    double step = 0.1;
    for (int round = 0; round < 10 && evaluations_left > 0; ++round) {
        for (Eigen::Index c = 0; c < dimension && evaluations_left > 0; ++c) {
            for (const double delta : {step, -step}) {
                const double moved = std::min(1.0, std::max(0.0, best_point[c] + delta));
                if (moved == best_point[c]) {
                    continue;  // clamped onto the current point; nothing to probe
                }
                if (evaluations_left == 0) {
                    break;
                }
                Vec candidate = best_point;
                candidate[c] = moved;
                --evaluations_left;
                const double v = objective(candidate);
                detail::require_finite_acquisition(v, candidate);
                if (v > best_value) {
                    best_point = std::move(candidate);
                    best_value = v;
                }
            }
        }
        step *= 0.5;
    }

    return {std::move(best_point), best_value};
}

}  // namespace ubo

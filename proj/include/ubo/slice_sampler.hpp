#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ubo/dataset.hpp"
#include "ubo/errors.hpp"
#include "ubo/gp.hpp"
#include "ubo/math.hpp"
#include "ubo/rng.hpp"

namespace ubo {

struct SliceSamplerConfig {
    int num_samples = 10;
    int burn_in = 10;           // sweeps discarded on warm-started chains
    int initial_burn_in = 100;  // sweeps discarded on the first fit of a run
    int thinning = 10;
    double initial_step_width = 1.0;
    int max_step_out = 100;
    double prior_mean = 0.0;  // Gaussian prior per log-space coordinate
    double prior_std = 2.0;

    void validate() const {
        if (num_samples < 1) {
            throw std::invalid_argument("slice sampler: num_samples must be >= 1");
        }
        if (thinning < 1) {
            throw std::invalid_argument("slice sampler: thinning must be >= 1");
        }
        if (burn_in < 0 || initial_burn_in < 0) {
            throw std::invalid_argument("slice sampler: burn-in must be >= 0");
        }
        if (!(initial_step_width > 0.0)) {
            throw std::invalid_argument("slice sampler: step width must be > 0");
        }
        if (max_step_out < 1) {
            throw std::invalid_argument("slice sampler: max_step_out must be >= 1");
        }
        if (!(prior_std > 0.0)) {
            throw std::invalid_argument("slice sampler: prior std must be > 0");
        }
    }
};

struct SliceStepResult {
    double x;
    double log_density;
    double level;  // log slice height; log_density >= level always holds
    double bracket_lo;
    double bracket_hi;
};

/// One univariate slice-sampling update with step-out and shrinkage
/// (Neal 2003). The accepted point lies inside the final bracket and its
/// log density is at or above the slice level. Comparisons are written so
/// that a NaN log density is treated as below the slice.
template <typename F>
SliceStepResult slice_step(F&& log_density, double x0, double logp0,
                           double width, int max_step_out, Rng& rng) {
    const double level = logp0 + std::log(rng.uniform01());

    const double u = rng.uniform01();
    double lo = x0 - u * width;
    double hi = lo + width;
    for (int i = 0; i < max_step_out && log_density(lo) > level; ++i) {
        lo -= width;
    }
    for (int i = 0; i < max_step_out && log_density(hi) > level; ++i) {
        hi += width;
    }

    for (int iter = 0; iter < 200; ++iter) {
        const double x1 = lo + rng.uniform01() * (hi - lo);
        const double lp = log_density(x1);
        if (lp >= level) {
            return {x1, lp, level, lo, hi};
        }
        if (x1 < x0) {
            lo = x1;
        } else {
            hi = x1;
        }
    }
    // Bracket collapsed onto x0, which always satisfies the level.
    return {x0, logp0, level, lo, hi};
}

struct SliceChainResult {
    std::vector<Vec> samples;
    std::vector<double> log_densities;
};

/// Coordinate-wise slice sampling of a multivariate log density. Returns
/// cfg.num_samples states taken every cfg.thinning sweeps after cfg.burn_in
/// sweeps; the last sample is the final chain state.
inline SliceChainResult slice_sample_chain(
    const std::function<double(const Vec&)>& log_target, Vec start,
    const SliceSamplerConfig& cfg, Rng& rng) {
    cfg.validate();
    Vec state = std::move(start);
    double logp = log_target(state);
    if (!std::isfinite(logp)) {
        throw std::invalid_argument(
            "slice_sample_chain: non-finite log density at the start point");
    }

    auto sweep = [&]() {
        for (Eigen::Index c = 0; c < state.size(); ++c) {
            auto conditional = [&](double v) {
                Vec probe = state;
                probe[c] = v;
                return log_target(probe);
            };
            const SliceStepResult step =
                slice_step(conditional, state[c], logp, cfg.initial_step_width,
                           cfg.max_step_out, rng);
            state[c] = step.x;
            logp = step.log_density;
        }
    };

    for (int i = 0; i < cfg.burn_in; ++i) sweep();

    SliceChainResult out;
    out.samples.reserve(static_cast<std::size_t>(cfg.num_samples));
    out.log_densities.reserve(static_cast<std::size_t>(cfg.num_samples));
    for (int s = 0; s < cfg.num_samples; ++s) {
        for (int t = 0; t < cfg.thinning; ++t) sweep();
        out.samples.push_back(state);
        out.log_densities.push_back(logp);
    }
    return out;
}

/// Log posterior of the log-space kernel hyperparameters
/// [log l_1 .. log l_d, log sf2]: GP marginal likelihood plus independent
/// Gaussian priors. Numerically infeasible parameters map to -infinity.
class HyperparameterPosterior {
public:
    HyperparameterPosterior(const Dataset& data, double noise_variance,
                            double prior_mean, double prior_std)
        : geometry_(data.points()),
          outcomes_(data.outcomes()),
          dimension_(data.dimension()),
          noise_variance_(noise_variance),
          prior_mean_(prior_mean),
          prior_std_(prior_std) {}

    Eigen::Index parameter_count() const { return dimension_ + 1; }

    KernelHyperparameters unpack(const Vec& v) const {
        KernelHyperparameters h;
        h.log_lengthscales = v.head(dimension_);
        h.log_signal_variance = v[dimension_];
        h.observation_noise_variance = noise_variance_;
        return h;
    }

    static Vec pack(const KernelHyperparameters& h) {
        Vec v(h.dimension() + 1);
        v.head(h.dimension()) = h.log_lengthscales;
        v[h.dimension()] = h.log_signal_variance;
        return v;
    }

    double operator()(const Vec& v) const {
        double logp = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double z = (v[i] - prior_mean_) / prior_std_;
            logp += -0.5 * z * z - std::log(prior_std_) - 0.5 * kLogTwoPi;
        }
        try {
            const GramFactor f = build_gram(geometry_, unpack(v));
            logp += log_marginal_likelihood(f, outcomes_);
        } catch (const conditioning_error&) {
            return -std::numeric_limits<double>::infinity();
        }
        return logp;
    }

private:
    DatasetGeometry geometry_;
    Vec outcomes_;
    Eigen::Index dimension_;
    double noise_variance_;
    double prior_mean_;
    double prior_std_;
};

/// Draws cfg.num_samples kernel hyperparameter samples from the posterior
/// with coordinate-wise slice sampling. Deterministic given the rng seed;
/// the last sample doubles as the warm-start state for the next chain.
inline std::vector<KernelHyperparameters> slice_sample_hyperparameters(
    const Dataset& data, const KernelHyperparameters& start,
    const SliceSamplerConfig& cfg, Rng& rng) {
    if (data.size() < 1) {
        throw std::invalid_argument(
            "slice_sample_hyperparameters: dataset must be non-empty");
    }
    HyperparameterPosterior posterior(data, start.observation_noise_variance,
                                      cfg.prior_mean, cfg.prior_std);
    const SliceChainResult chain = slice_sample_chain(
        std::cref(posterior), HyperparameterPosterior::pack(start), cfg, rng);
    std::vector<KernelHyperparameters> samples;
    samples.reserve(chain.samples.size());
    for (const Vec& v : chain.samples) {
        samples.push_back(posterior.unpack(v));
    }
    return samples;
}

}  // namespace ubo

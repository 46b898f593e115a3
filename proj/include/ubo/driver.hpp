#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ubo/acquisition.hpp"
#include "ubo/dataset.hpp"
#include "ubo/errors.hpp"
#include "ubo/gp.hpp"
#include "ubo/inner_opt.hpp"
#include "ubo/lhs.hpp"
#include "ubo/math.hpp"
#include "ubo/rng.hpp"
#include "ubo/slice_sampler.hpp"
#include "ubo/unscented.hpp"

namespace ubo {

enum class Mode { classical_bo, unscented_bo };

inline const char* mode_name(Mode m) {
    return m == Mode::classical_bo ? "classical_bo" : "unscented_bo";
}

struct OptimizerConfig {
    Eigen::Index dimension = 1;
    int initial_samples = 5;  // p
    int iterations = 45;      // N
    InputNoise input_noise{0.0};
    double ut_k = 0.0;
    Mode mode = Mode::unscented_bo;
    int inner_optimizer_budget = 1000;
    std::uint64_t seed = 0;
    SliceSamplerConfig sampler{};
    double observation_noise_variance = 1e-6;

    void validate() const {
        if (dimension < 1) {
            throw std::invalid_argument("optimizer: dimension must be >= 1");
        }
        if (initial_samples < 1) {
            throw std::invalid_argument("optimizer: initial_samples must be >= 1");
        }
        if (iterations < 0) {
            throw std::invalid_argument("optimizer: iterations must be >= 0");
        }
        if (inner_optimizer_budget < 1) {
            throw std::invalid_argument("optimizer: inner_optimizer_budget must be >= 1");
        }
        if (!(observation_noise_variance >= 0.0)) {
            throw std::invalid_argument("optimizer: observation noise variance must be >= 0");
        }
        input_noise.validate();
        sampler.validate();
        if (mode == Mode::unscented_bo &&
            !(static_cast<double>(dimension) + ut_k > 0.0)) {
            throw std::invalid_argument(
                "optimizer: dimension + ut_k must be positive in unscented mode");
        }
    }
};

struct IncumbentReport {
    Vec x_star;
    double criterion_value;  // y_best (classical) or UO(x_star) (unscented)
    int iteration;
};

/// GP surrogate fit to mean-centered outcomes; predictions restore the
/// offset so callers always see values on the original outcome scale.
class CenteredSurrogate {
public:
    CenteredSurrogate(const Dataset& data,
                      const std::vector<KernelHyperparameters>& hyp_samples)
        : offset_(data.outcomes().mean()),
          gp_(Dataset(data.points(), Vec(data.outcomes().array() - offset_)),
              hyp_samples) {}

    PosteriorPrediction predict(const Vec& x) const {
        PosteriorPrediction p = gp_.predict(x);
        p.means.array() += offset_;
        return p;
    }

    double mixture_mean(const Vec& x) const {
        return gp_.mixture_mean(x) + offset_;
    }

    double offset() const { return offset_; }

private:
    double offset_;
    GpSurrogate gp_;
};

/// Unscented outcome UO(x): sigma-point weighted average of the posterior
/// mixture mean around x.
template <typename Surrogate>
double unscented_outcome(const Surrogate& gp, const Vec& x,
                         const InputNoise& noise, double k) {
    const SigmaPointSet sp = sigma_points(x, noise, k);
    return unscented_mean([&gp](const Vec& p) { return gp.mixture_mean(p); }, sp);
}

/// Picks the incumbent among the observed points: best raw outcome in
/// classical mode, best unscented outcome in unscented mode. Ties resolve
/// to the lowest index.
template <typename Surrogate>
IncumbentReport select_incumbent(const Dataset& data, const Surrogate& gp,
                                 const OptimizerConfig& cfg, int iteration = 0) {
    if (data.size() < 1) {
        throw std::invalid_argument("select_incumbent: dataset must be non-empty");
    }
    Eigen::Index best = 0;
    double best_value;
    if (cfg.mode == Mode::classical_bo) {
        best_value = data.outcomes()[0];
        for (Eigen::Index i = 1; i < data.size(); ++i) {
            if (data.outcomes()[i] > best_value) {
                best_value = data.outcomes()[i];
                best = i;
            }
        }
    } else {
        best_value = unscented_outcome(gp, data.point(0), cfg.input_noise, cfg.ut_k);
        for (Eigen::Index i = 1; i < data.size(); ++i) {
            const double uo =
                unscented_outcome(gp, data.point(i), cfg.input_noise, cfg.ut_k);
            if (uo > best_value) {
                best_value = uo;
                best = i;
            }
        }
    }
    return {data.point(best), best_value, iteration};
}

struct OptimizationResult {
    std::vector<IncumbentReport> reports;  // iteration 0 .. N
    Dataset data;
};

using Objective = std::function<double(const Vec&)>;

namespace detail {

inline double evaluate_objective(const Objective& objective, const Vec& x) {
    const double y = objective(x);
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg << "run_optimization: objective returned non-finite value " << y
            << " at query (";
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            msg << (i ? ", " : "") << x[i];
        }
        msg << ")";
        throw evaluation_error(msg.str());
    }
    return y;
}

}  // namespace detail

/// Runs the full Bayesian optimization loop: LHS initial design, then N
/// rounds of hyperparameter resampling, acquisition maximization (EI or
/// UEI by mode) and objective evaluation. Returns one incumbent report per
/// fitted surrogate: iteration 0 right after the initial design plus one
/// per optimization iteration. Evaluates the objective exactly p + N times.
inline OptimizationResult run_optimization(const Objective& objective,
                                           const OptimizerConfig& cfg, Rng& rng) {
    cfg.validate();

    const Mat design = latin_hypercube(cfg.initial_samples, cfg.dimension, rng);
    Vec outcomes(cfg.initial_samples);
    for (int i = 0; i < cfg.initial_samples; ++i) {
        outcomes[i] = detail::evaluate_objective(objective, design.row(i).transpose());
    }
    Dataset data(design, outcomes);

    KernelHyperparameters hyp = KernelHyperparameters::unit(
        cfg.dimension, cfg.observation_noise_variance);

    std::vector<IncumbentReport> reports;
    reports.reserve(static_cast<std::size_t>(cfg.iterations) + 1);

    for (int t = 0; t <= cfg.iterations; ++t) {
        SliceSamplerConfig sampler_cfg = cfg.sampler;
        if (t == 0) {
            sampler_cfg.burn_in = cfg.sampler.initial_burn_in;
        }
        const std::vector<KernelHyperparameters> hyp_samples =
            slice_sample_hyperparameters(data, hyp, sampler_cfg, rng);
        hyp = hyp_samples.back();

        const CenteredSurrogate gp(data, hyp_samples);
        reports.push_back(select_incumbent(data, gp, cfg, t));
        if (t == cfg.iterations) {
            break;
        }

        const double y_best = data.outcomes().maxCoeff();
        Objective acquisition;
        if (cfg.mode == Mode::classical_bo) {
            acquisition = [&gp, y_best](const Vec& x) {
                return expected_improvement(gp.predict(x), y_best);
            };
        } else {
            acquisition = [&gp, y_best, &cfg](const Vec& x) {
                const SigmaPointSet sp = sigma_points(x, cfg.input_noise, cfg.ut_k);
                return unscented_expected_improvement(
                    [&gp, y_best](const Vec& p) {
                        return expected_improvement(gp.predict(p), y_best);
                    },
                    sp);
            };
        }

        const AcquisitionOptimum probe = maximize_acquisition(
            acquisition, cfg.dimension, cfg.inner_optimizer_budget, rng);
        data.append(probe.point,
                    detail::evaluate_objective(objective, probe.point));
    }

    return {std::move(reports), std::move(data)};
}

/// Convenience overload seeding the random stream from cfg.seed.
inline OptimizationResult run_optimization(const Objective& objective,
                                           const OptimizerConfig& cfg) {
    Rng rng(cfg.seed);
    return run_optimization(objective, cfg, rng);
}

}  // namespace ubo

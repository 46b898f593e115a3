#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ubo/driver.hpp"
#include "ubo/math.hpp"

namespace {

struct FlatSurrogate {
    double mixture_mean(const ubo::Vec&) const { return 0.0; }
};

// Narrow spike of full width ~2*half_width at x_a and a broad plateau at
// x_b, near-equal heights. Input noise spanning the spike collapses its
// unscented outcome while leaving the plateau's intact.
struct SpikePlateauFixture {
    ubo::Dataset data;
    std::vector<ubo::KernelHyperparameters> hyp;
    Eigen::Index spike_index = 0;
    std::vector<Eigen::Index> plateau_indices;
    double spike_x = 0.70;
    double plateau_x = 0.20;
};

SpikePlateauFixture make_spike_plateau(std::uint64_t seed) {
    ubo::Rng rng(seed);
    auto jitter_x = [&rng]() { return 0.004 * (rng.uniform01() - 0.5); };
    auto jitter_y = [&rng]() { return 0.01 * (rng.uniform01() - 0.5); };

    SpikePlateauFixture fx;
    std::vector<double> xs, ys;
    // Broad plateau around x_b = 0.2.
    for (const double x : {0.10, 0.15, 0.20, 0.25, 0.30}) {
        xs.push_back(x + jitter_x());
        ys.push_back(2.0 + jitter_y());
        fx.plateau_indices.push_back(static_cast<Eigen::Index>(xs.size()) - 1);
    }
    // Valley floor between the two features.
    for (const double x : {0.45, 0.90}) {
        xs.push_back(x + jitter_x());
        ys.push_back(0.2 + jitter_y());
    }
    // Narrow spike at x_a = 0.7: shoulders at the floor, tip at ~plateau
    // height (slightly above, so the greedy argmax is unambiguous).
    xs.push_back(0.65 + jitter_x());
    ys.push_back(0.2 + jitter_y());
    xs.push_back(0.70);
    ys.push_back(2.05);
    fx.spike_index = static_cast<Eigen::Index>(xs.size()) - 1;
    xs.push_back(0.75 + jitter_x());
    ys.push_back(0.2 + jitter_y());

    ubo::Mat X(static_cast<Eigen::Index>(xs.size()), 1);
    ubo::Vec y(static_cast<Eigen::Index>(ys.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        X(static_cast<Eigen::Index>(i), 0) = xs[i];
        y[static_cast<Eigen::Index>(i)] = ys[i];
    }
    fx.data = ubo::Dataset(X, y);

    ubo::KernelHyperparameters h = ubo::KernelHyperparameters::unit(1, 1e-6);
    h.log_lengthscales[0] = std::log(0.04);
    h.log_signal_variance = std::log(1.5);
    fx.hyp = {h};
    return fx;
}

// Dense Gauss-quadrature expectation of the posterior mean under
// x' ~ N(x, sigma_x^2), probes clamped to the domain like executed queries.
double dense_expected_mean(const ubo::CenteredSurrogate& gp, double x,
                           double sigma_x) {
    const int nodes = 2001;
    const double lo = x - 5.0 * sigma_x, hi = x + 5.0 * sigma_x;
    const double h = (hi - lo) / (nodes - 1);
    double num = 0.0, den = 0.0;
    ubo::Vec probe(1);
    for (int i = 0; i < nodes; ++i) {
        const double t = lo + h * i;
        const double w = ubo::normal_pdf((t - x) / sigma_x);
        probe[0] = std::min(1.0, std::max(0.0, t));
        num += w * gp.mixture_mean(probe);
        den += w;
    }
    return num / den;
}

TEST_CASE("unscented outcome with zero input noise is the mixture mean") {
    const SpikePlateauFixture fx = make_spike_plateau(0);
    const ubo::CenteredSurrogate gp(fx.data, fx.hyp);
    ubo::Vec x(1);
    x << 0.37;
    REQUIRE(ubo::unscented_outcome(gp, x, ubo::InputNoise{0.0}, 1.0) ==
            Catch::Approx(gp.mixture_mean(x)).margin(1e-12));
}

TEST_CASE("unscented outcome far from data matches the mean prediction") {
    // Posterior mean is locally flat (~offset) away from the data, so the
    // transform must reproduce the prediction to linear-exactness accuracy.
    ubo::Mat X(2, 1);
    X << 0.05, 0.1;
    ubo::Vec y(2);
    y << 1.0, 1.2;
    ubo::KernelHyperparameters h = ubo::KernelHyperparameters::unit(1, 1e-6);
    h.log_lengthscales[0] = std::log(0.01);
    const ubo::CenteredSurrogate gp(ubo::Dataset(X, y), {h});
    ubo::Vec x(1);
    x << 0.8;
    const double uo = ubo::unscented_outcome(gp, x, ubo::InputNoise{0.02}, 1.0);
    REQUIRE(uo == Catch::Approx(gp.mixture_mean(x)).margin(1e-9));
}

TEST_CASE("unscented outcome prefers the plateau over the spike") {
    const SpikePlateauFixture fx = make_spike_plateau(7);
    const ubo::CenteredSurrogate gp(fx.data, fx.hyp);
    const ubo::InputNoise noise{0.05};

    ubo::Vec xa(1), xb(1);
    xa << fx.spike_x;
    xb << fx.plateau_x;
    const double uo_spike = ubo::unscented_outcome(gp, xa, noise, 0.0);
    const double uo_plateau = ubo::unscented_outcome(gp, xb, noise, 0.0);
    REQUIRE(uo_plateau > uo_spike);

    // The dense expectation oracle orders the two points the same way.
    const double dense_spike = dense_expected_mean(gp, fx.spike_x, noise.sigma_x);
    const double dense_plateau =
        dense_expected_mean(gp, fx.plateau_x, noise.sigma_x);
    REQUIRE(dense_plateau > dense_spike);

    // Both criteria see a collapsed spike and an intact plateau.
    REQUIRE(uo_spike < 1.0);
    REQUIRE(uo_plateau > 1.5);
    REQUIRE(dense_plateau > dense_spike + 0.3);
}

TEST_CASE("incumbent selection: classical picks the argmax outcome") {
    ubo::Mat X(3, 1);
    X << 0.1, 0.5, 0.9;
    ubo::Vec y(3);
    y << 1.0, 3.0, 2.0;
    const ubo::Dataset data(X, y);
    ubo::OptimizerConfig cfg;
    cfg.mode = ubo::Mode::classical_bo;
    const ubo::IncumbentReport rep =
        ubo::select_incumbent(data, FlatSurrogate{}, cfg, 4);
    REQUIRE(rep.x_star[0] == 0.5);
    REQUIRE(rep.criterion_value == 3.0);
    REQUIRE(rep.iteration == 4);
}

TEST_CASE("incumbent ties resolve to the lowest index") {
    ubo::Mat X(3, 1);
    X << 0.2, 0.6, 0.8;
    ubo::Vec y(3);
    y << 3.0, 3.0, 1.0;
    ubo::OptimizerConfig cfg;
    cfg.mode = ubo::Mode::classical_bo;
    const ubo::IncumbentReport rep =
        ubo::select_incumbent(ubo::Dataset(X, y), FlatSurrogate{}, cfg);
    REQUIRE(rep.x_star[0] == 0.2);
}

TEST_CASE("with zero noise and an interpolating GP both modes agree") {
    ubo::Mat X(4, 1);
    X << 0.15, 0.4, 0.62, 0.85;
    ubo::Vec y(4);
    y << 0.3, 1.7, 0.9, -0.5;
    const ubo::Dataset data(X, y);
    ubo::KernelHyperparameters h = ubo::KernelHyperparameters::unit(1, 1e-10);
    h.log_lengthscales[0] = std::log(0.15);
    const ubo::CenteredSurrogate gp(data, {h});

    ubo::OptimizerConfig cfg;
    cfg.input_noise = ubo::InputNoise{0.0};
    cfg.ut_k = 1.0;

    cfg.mode = ubo::Mode::unscented_bo;
    const ubo::IncumbentReport unscented = ubo::select_incumbent(data, gp, cfg);
    cfg.mode = ubo::Mode::classical_bo;
    const ubo::IncumbentReport classical = ubo::select_incumbent(data, gp, cfg);

    REQUIRE(unscented.x_star == classical.x_star);
    REQUIRE(unscented.criterion_value ==
            Catch::Approx(classical.criterion_value).margin(1e-4));
}

TEST_CASE("incumbent modes disagree on the spike/plateau fixture") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SpikePlateauFixture fx = make_spike_plateau(seed);
        const ubo::CenteredSurrogate gp(fx.data, fx.hyp);
        ubo::OptimizerConfig cfg;
        cfg.input_noise = ubo::InputNoise{0.05};
        cfg.ut_k = 0.0;

        cfg.mode = ubo::Mode::classical_bo;
        const ubo::IncumbentReport greedy = ubo::select_incumbent(fx.data, gp, cfg);
        REQUIRE(greedy.x_star[0] == fx.data.point(fx.spike_index)[0]);

        cfg.mode = ubo::Mode::unscented_bo;
        const ubo::IncumbentReport safe = ubo::select_incumbent(fx.data, gp, cfg);
        bool on_plateau = false;
        for (const Eigen::Index i : fx.plateau_indices) {
            if (safe.x_star[0] == fx.data.point(i)[0]) on_plateau = true;
        }
        REQUIRE(on_plateau);
    }
}

TEST_CASE("centered surrogate restores the outcome offset") {
    ubo::Mat X(3, 1);
    X << 0.1, 0.5, 0.9;
    ubo::Vec y = ubo::Vec::Constant(3, 7.25);
    ubo::KernelHyperparameters h = ubo::KernelHyperparameters::unit(1, 1e-8);
    h.log_lengthscales[0] = std::log(0.05);
    const ubo::CenteredSurrogate gp(ubo::Dataset(X, y), {h});
    REQUIRE(gp.offset() == 7.25);
    ubo::Vec far(1);
    far << 0.3;  // several lengthscales from every observation
    REQUIRE(gp.mixture_mean(far) == Catch::Approx(7.25).margin(1e-6));
    const ubo::PosteriorPrediction pred = gp.predict(far);
    REQUIRE(pred.means[0] == Catch::Approx(7.25).margin(1e-6));
}

ubo::OptimizerConfig fast_config() {
    ubo::OptimizerConfig cfg;
    cfg.dimension = 1;
    cfg.initial_samples = 4;
    cfg.iterations = 6;
    cfg.inner_optimizer_budget = 120;
    cfg.sampler.num_samples = 3;
    cfg.sampler.burn_in = 2;
    cfg.sampler.initial_burn_in = 10;
    cfg.sampler.thinning = 2;
    cfg.observation_noise_variance = 1e-6;
    return cfg;
}

TEST_CASE("zero iterations: initial design only, one report") {
    ubo::OptimizerConfig cfg = fast_config();
    cfg.iterations = 0;
    cfg.seed = 99;
    int evals = 0;
    auto objective = [&evals](const ubo::Vec& x) {
        ++evals;
        return std::sin(5.0 * x[0]);
    };
    const ubo::OptimizationResult result = ubo::run_optimization(objective, cfg);
    REQUIRE(evals == cfg.initial_samples);
    REQUIRE(result.data.size() == cfg.initial_samples);
    REQUIRE(result.reports.size() == 1);
    REQUIRE(result.reports[0].iteration == 0);
}

TEST_CASE("evaluation accounting and report structure") {
    ubo::OptimizerConfig cfg = fast_config();
    cfg.seed = 4;
    cfg.mode = ubo::Mode::unscented_bo;
    cfg.input_noise = ubo::InputNoise{0.02};
    int evals = 0;
    auto objective = [&evals](const ubo::Vec& x) {
        ++evals;
        return -(x[0] - 0.4) * (x[0] - 0.4);
    };
    const ubo::OptimizationResult result = ubo::run_optimization(objective, cfg);
    REQUIRE(evals == cfg.initial_samples + cfg.iterations);
    REQUIRE(result.data.size() == cfg.initial_samples + cfg.iterations);
    REQUIRE(result.reports.size() ==
            static_cast<std::size_t>(cfg.iterations) + 1);
    for (std::size_t t = 0; t < result.reports.size(); ++t) {
        REQUIRE(result.reports[t].iteration == static_cast<int>(t));
        // The incumbent is always one of the observed points.
        bool found = false;
        for (Eigen::Index i = 0; i < result.data.size(); ++i) {
            if (result.data.point(i) == result.reports[t].x_star) found = true;
        }
        REQUIRE(found);
    }
    for (Eigen::Index i = 0; i < result.data.size(); ++i) {
        REQUIRE(ubo::in_unit_cube(result.data.point(i)));
    }
}

TEST_CASE("runs are reproducible from the seed") {
    ubo::OptimizerConfig cfg = fast_config();
    cfg.seed = 1234;
    auto objective = [](const ubo::Vec& x) { return std::cos(7.0 * x[0]); };
    const ubo::OptimizationResult a = ubo::run_optimization(objective, cfg);
    const ubo::OptimizationResult b = ubo::run_optimization(objective, cfg);
    REQUIRE(a.data.points() == b.data.points());
    REQUIRE(a.data.outcomes() == b.data.outcomes());
    cfg.seed = 1235;
    const ubo::OptimizationResult c = ubo::run_optimization(objective, cfg);
    REQUIRE(a.data.points() != c.data.points());
}

TEST_CASE("classical mode converges on a smooth quadratic") {
    ubo::OptimizerConfig cfg;
    cfg.dimension = 1;
    cfg.initial_samples = 5;
    cfg.iterations = 20;
    cfg.mode = ubo::Mode::classical_bo;
    cfg.inner_optimizer_budget = 300;
    cfg.sampler.num_samples = 5;
    cfg.sampler.burn_in = 3;
    cfg.sampler.initial_burn_in = 20;
    cfg.sampler.thinning = 2;
    cfg.seed = 71;
    auto objective = [](const ubo::Vec& x) {
        return -(x[0] - 0.5) * (x[0] - 0.5);
    };
    const ubo::OptimizationResult result = ubo::run_optimization(objective, cfg);
    REQUIRE(std::abs(result.reports.back().x_star[0] - 0.5) <= 0.05);
}

TEST_CASE("zero input noise makes the modes produce identical queries") {
    ubo::OptimizerConfig cfg = fast_config();
    cfg.iterations = 8;
    cfg.seed = 2025;
    cfg.input_noise = ubo::InputNoise{0.0};
    cfg.ut_k = 0.0;
    auto objective = [](const ubo::Vec& x) {
        return std::sin(9.0 * x[0]) + 0.5 * x[0];
    };
    cfg.mode = ubo::Mode::classical_bo;
    const ubo::OptimizationResult classical = ubo::run_optimization(objective, cfg);
    cfg.mode = ubo::Mode::unscented_bo;
    const ubo::OptimizationResult unscented = ubo::run_optimization(objective, cfg);
    REQUIRE(classical.data.points() == unscented.data.points());
}

TEST_CASE("a non-finite objective value aborts with the query location") {
    ubo::OptimizerConfig cfg = fast_config();
    cfg.seed = 3;
    auto objective = [](const ubo::Vec&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    bool thrown = false;
    try {
        ubo::run_optimization(objective, cfg);
    } catch (const ubo::evaluation_error& e) {
        thrown = true;
        REQUIRE(std::string(e.what()).find("query") != std::string::npos);
    }
    REQUIRE(thrown);
}

TEST_CASE("optimizer configuration validation") {
    ubo::OptimizerConfig cfg;
    cfg.dimension = 0;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.initial_samples = 0;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.iterations = -1;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.inner_optimizer_budget = 0;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.observation_noise_variance = -1.0;
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.input_noise = ubo::InputNoise{-0.5};
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.mode = ubo::Mode::unscented_bo;
    cfg.ut_k = -1.0;  // d + k = 0
    REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
    // The same k is fine in classical mode, where the transform is unused.
    cfg.mode = ubo::Mode::classical_bo;
    REQUIRE_NOTHROW(cfg.validate());
}

TEST_CASE("mode names are stable identifiers") {
    REQUIRE(std::string(ubo::mode_name(ubo::Mode::classical_bo)) ==
            "classical_bo");
    REQUIRE(std::string(ubo::mode_name(ubo::Mode::unscented_bo)) ==
            "unscented_bo");
}

}  // namespace

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ubo/math.hpp"
#include "ubo/rng.hpp"
#include "ubo/unscented.hpp"

namespace ubo {

namespace detail {

/// Reads whitespace-separated numeric rows from a fixture file, skipping
/// blank lines and '#' comments. Every row must have the same width.
inline std::vector<std::vector<double>> read_fixture_rows(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("could not open fixture file: " + path);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::vector<double> row;
        double value;
        while (fields >> value) {
            row.push_back(value);
        }
        if (!fields.eof()) {
            throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                     ": malformed numeric field");
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                     ": inconsistent column count");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error(path + ": no data rows");
    }
    return rows;
}

inline void require_in_domain(const Vec& x, Eigen::Index dimension,
                              const char* name) {
    if (x.size() != dimension) {
        throw std::domain_error(std::string(name) + ": expected " +
                                std::to_string(dimension) +
                                " coordinates, got " + std::to_string(x.size()));
    }
    if (!in_unit_cube(x)) {
        throw std::domain_error(std::string(name) +
                                ": point outside the unit cube");
    }
}

}  // namespace detail

/// 1D benchmark objective built as a fixed linear combination of
/// squared-exponential basis bumps, loaded from a data fixture. The fixture
/// shipped with the repository has its global maximum on a narrow peak near
/// x = 0.89 and a broad, flat local maximum near x = 0.08.
class RkhsFunction {
public:
    struct Bump {
        double value;        // signed amplitude
        double center;       // location in [0, 1]
        double lengthscale;  // bump width
    };

    explicit RkhsFunction(std::vector<Bump> bumps) : bumps_(std::move(bumps)) {
        if (bumps_.empty()) {
            throw std::invalid_argument("RkhsFunction: need at least one bump");
        }
        for (const Bump& b : bumps_) {
            if (!(b.lengthscale > 0.0)) {
                throw std::invalid_argument(
                    "RkhsFunction: bump lengthscale must be > 0");
            }
        }
    }

    /// Loads a fixture with columns: value center lengthscale.
    static RkhsFunction load(const std::string& path) {
        std::vector<Bump> bumps;
        for (const std::vector<double>& row : detail::read_fixture_rows(path)) {
            if (row.size() != 3) {
                throw std::runtime_error(
                    path + ": expected 3 columns (value center lengthscale)");
            }
            bumps.push_back({row[0], row[1], row[2]});
        }
        return RkhsFunction(std::move(bumps));
    }

    double operator()(double x) const {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::domain_error("rkhs function: x outside [0, 1]");
        }
        double sum = 0.0;
        for (const Bump& b : bumps_) {
            const double z = (x - b.center) / b.lengthscale;
            sum += b.value * std::exp(-0.5 * z * z);
        }
        return sum;
    }

    double operator()(const Vec& x) const {
        detail::require_in_domain(x, 1, "rkhs function");
        return (*this)(x[0]);
    }

    const std::vector<Bump>& bumps() const { return bumps_; }

private:
    std::vector<Bump> bumps_;
};

/// Mixture of isotropic Gaussian components over the unit cube. The default
/// 2D fixture has a narrow global peak and a broad safe peak, so that the
/// input-noise-blurred objective prefers the broad one.
class GaussianMixtureSpec {
public:
    struct Component {
        double weight;
        Vec center;
        double std;
    };

    explicit GaussianMixtureSpec(std::vector<Component> components)
        : components_(std::move(components)) {
        if (components_.empty()) {
            throw std::invalid_argument(
                "GaussianMixtureSpec: need at least one component");
        }
        dimension_ = components_.front().center.size();
        for (const Component& c : components_) {
            if (!(c.weight > 0.0)) {
                throw std::invalid_argument(
                    "GaussianMixtureSpec: component weight must be > 0");
            }
            if (!(c.std > 0.0)) {
                throw std::invalid_argument(
                    "GaussianMixtureSpec: component std must be > 0");
            }
            if (c.center.size() != dimension_) {
                throw std::invalid_argument(
                    "GaussianMixtureSpec: inconsistent component dimensions");
            }
            if (!in_unit_cube(c.center)) {
                throw std::invalid_argument(
                    "GaussianMixtureSpec: component center outside the unit cube");
            }
        }
    }

    /// Loads a fixture with columns: weight center_1 .. center_d std.
    /// The dimension is inferred from the column count.
    static GaussianMixtureSpec load(const std::string& path) {
        std::vector<Component> components;
        for (const std::vector<double>& row : detail::read_fixture_rows(path)) {
            if (row.size() < 3) {
                throw std::runtime_error(
                    path + ": expected columns weight center... std");
            }
            Component c;
            c.weight = row.front();
            c.std = row.back();
            c.center = Eigen::Map<const Eigen::VectorXd>(
                row.data() + 1, static_cast<Eigen::Index>(row.size()) - 2);
            components.push_back(std::move(c));
        }
        return GaussianMixtureSpec(std::move(components));
    }

    double operator()(const Vec& x) const {
        detail::require_in_domain(x, dimension_, "gm function");
        double sum = 0.0;
        for (const Component& c : components_) {
            const double r2 = (x - c.center).squaredNorm();
            sum += c.weight * std::exp(-r2 / (2.0 * c.std * c.std));
        }
        return sum;
    }

    Eigen::Index dimension() const { return dimension_; }
    const std::vector<Component>& components() const { return components_; }

private:
    std::vector<Component> components_;
    Eigen::Index dimension_;
};

struct RobustnessStats {
    double mean_outcome;
    double std_outcome;    // population standard deviation
    double worst_outcome;  // minimum probe outcome
    int num_probes;
};

/// Monte Carlo robustness of a candidate point: draws num_probes inputs
/// from N(x_star, sigma_x^2 I) clamped to the unit cube, evaluates the
/// objective at each and reports mean / population std / worst outcome.
template <typename F>
RobustnessStats robustness_eval(F&& objective, const Vec& x_star,
                                const InputNoise& noise, int num_probes,
                                Rng& rng) {
    if (num_probes < 1) {
        throw std::invalid_argument("robustness_eval: num_probes must be >= 1");
    }
    noise.validate();

    std::vector<double> outcomes(static_cast<std::size_t>(num_probes));
    double sum = 0.0;
    double worst = 0.0;
    Vec probe(x_star.size());
    for (int i = 0; i < num_probes; ++i) {
        for (Eigen::Index c = 0; c < x_star.size(); ++c) {
            probe[c] = x_star[c] + noise.sigma_x * rng.normal();
        }
        clamp_to_unit_cube(probe);
        const double y = objective(probe);
        outcomes[static_cast<std::size_t>(i)] = y;
        sum += y;
        worst = (i == 0) ? y : std::min(worst, y);
    }
    const double mean = sum / num_probes;
    // Two-pass variance: identical outcomes must give exactly zero std.
    double sq = 0.0;
    for (const double y : outcomes) {
        sq += (y - mean) * (y - mean);
    }
    return {mean, std::sqrt(sq / num_probes), worst, num_probes};
}

}  // namespace ubo

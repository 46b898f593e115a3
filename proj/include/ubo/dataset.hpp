#pragma once

#include <stdexcept>
#include <string>

#include "ubo/math.hpp"

namespace ubo {

/// Observed query points (rows, normalized to [0,1]^d) and their outcomes.
///
/// A Dataset is a value: appending copies into the surrogate snapshots that
/// hold it, so concurrent readers of an older snapshot are never invalidated.
class Dataset {
public:
    Dataset() = default;

    Dataset(Mat points, Vec outcomes)
        : points_(std::move(points)), outcomes_(std::move(outcomes)) {
        if (points_.rows() != outcomes_.size()) {
            throw std::invalid_argument(
                "Dataset: points rows must match outcomes length");
        }
        for (Eigen::Index i = 0; i < points_.rows(); ++i) {
            check_point(points_.row(i).transpose());
        }
    }

    void append(const Vec& x, double y) {
        check_point(x);
        if (points_.rows() == 0) {
            points_.resize(1, x.size());
            points_.row(0) = x.transpose();
            outcomes_.resize(1);
            outcomes_[0] = y;
            return;
        }
        if (x.size() != points_.cols()) {
            throw std::invalid_argument("Dataset::append: dimension mismatch");
        }
        points_.conservativeResize(points_.rows() + 1, Eigen::NoChange);
        points_.row(points_.rows() - 1) = x.transpose();
        outcomes_.conservativeResize(outcomes_.size() + 1);
        outcomes_[outcomes_.size() - 1] = y;
    }

    Eigen::Index size() const { return points_.rows(); }
    Eigen::Index dimension() const { return points_.cols(); }
    const Mat& points() const { return points_; }
    const Vec& outcomes() const { return outcomes_; }
    Vec point(Eigen::Index i) const { return points_.row(i).transpose(); }

private:
    static void check_point(const Vec& x) {
        if (!in_unit_cube(x)) {
            throw std::invalid_argument(
                "Dataset: point coordinates must lie in [0,1]");
        }
    }

    Mat points_;    // n x d
    Vec outcomes_;  // n
};

}  // namespace ubo

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "ubo/dataset.hpp"
#include "ubo/errors.hpp"
#include "ubo/kernel.hpp"
#include "ubo/math.hpp"

namespace ubo {

/// Mixture predictive distribution at a query point: one Gaussian component
/// per hyperparameter sample. Variances are clamped to be >= 0.
struct PosteriorPrediction {
    Vec means;
    Vec variances;

    Eigen::Index size() const { return means.size(); }
};

/// Per-dimension squared coordinate differences of a dataset, cached so the
/// hyperparameter sampler can rebuild Gram matrices without touching the raw
/// points again.
class DatasetGeometry {
public:
    explicit DatasetGeometry(const Mat& points) {
        const Eigen::Index n = points.rows();
        const Eigen::Index d = points.cols();
        sq_diffs_.reserve(static_cast<std::size_t>(d));
        for (Eigen::Index k = 0; k < d; ++k) {
            Mat delta(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j <= i; ++j) {
                    const double u = points(i, k) - points(j, k);
                    delta(i, j) = u * u;
                    delta(j, i) = delta(i, j);
                }
            }
            sq_diffs_.push_back(std::move(delta));
        }
        n_ = n;
    }

    Eigen::Index size() const { return n_; }
    Eigen::Index dimension() const {
        return static_cast<Eigen::Index>(sq_diffs_.size());
    }
    const Mat& sq_diff(Eigen::Index k) const {
        return sq_diffs_[static_cast<std::size_t>(k)];
    }

private:
    std::vector<Mat> sq_diffs_;
    Eigen::Index n_ = 0;
};

/// Gram matrix together with its Cholesky factor and the jitter that made
/// the factorization succeed.
struct GramFactor {
    Mat K;          // kernel matrix including noise and jitter on the diagonal
    Mat L;          // lower Cholesky factor of K
    double jitter;  // diagonal jitter actually used
};

namespace detail {

inline Mat kernel_matrix(const DatasetGeometry& geom,
                         const KernelHyperparameters& hyp) {
    const Eigen::Index n = geom.size();
    const Eigen::Index d = geom.dimension();
    Vec inv_l2(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double l = hyp.lengthscale(k);
        inv_l2[k] = 1.0 / (l * l);
    }
    const double sf2 = hyp.signal_variance();
    Mat K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = sf2;
        for (Eigen::Index j = 0; j < i; ++j) {
            double r2 = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                r2 += geom.sq_diff(k)(i, j) * inv_l2[k];
            }
            const double s = std::sqrt(5.0 * r2);
            K(i, j) = sf2 * (1.0 + s + s * s / 3.0) * std::exp(-s);
            K(j, i) = K(i, j);
        }
    }
    return K;
}

}  // namespace detail

/// Builds the noisy Gram matrix and factorizes it, escalating the diagonal
/// jitter from 1e-10*sf2 by factors of 10 up to 1e-4*sf2 before giving up
/// with a conditioning_error.
inline GramFactor build_gram(const DatasetGeometry& geom,
                             const KernelHyperparameters& hyp) {
    hyp.validate();
    const double sf2 = hyp.signal_variance();
    const Mat base = detail::kernel_matrix(geom, hyp);
    std::vector<double> attempted;
    // Count-based ladder (1e-10*sf2 .. 1e-4*sf2): a value-based stopping rule
    // would never terminate when sf2 overflows to infinity.
    double jitter = 1e-10 * sf2;
    for (int attempt = 0; attempt < 7; ++attempt, jitter *= 10.0) {
        attempted.push_back(jitter);
        GramFactor out;
        out.K = base;
        out.K.diagonal().array() += hyp.observation_noise_variance + jitter;
        Eigen::LLT<Mat> llt(out.K);
        // LLT::info() misses NaN inputs (NaN pivots compare as positive), so
        // also require a finite factor before accepting it.
        if (llt.info() == Eigen::Success &&
            llt.matrixLLT().diagonal().allFinite()) {
            out.L = llt.matrixL();
            out.jitter = jitter;
            return out;
        }
    }
    throw conditioning_error(
        "build_gram: Cholesky failed after jitter escalation", attempted);
}

inline GramFactor build_gram(const Dataset& data,
                             const KernelHyperparameters& hyp) {
    if (data.size() < 1) {
        throw std::invalid_argument("build_gram: dataset must be non-empty");
    }
    return build_gram(DatasetGeometry(data.points()), hyp);
}

/// Gaussian log evidence -1/2 y'K^-1 y - 1/2 log|K| - n/2 log(2 pi),
/// evaluated through the Cholesky factor.
inline double log_marginal_likelihood(const GramFactor& factor, const Vec& y) {
    const Eigen::Index n = y.size();
    Vec v = factor.L.triangularView<Eigen::Lower>().solve(y);
    const double quad = v.squaredNorm();
    const double logdet = 2.0 * factor.L.diagonal().array().log().sum();
    return -0.5 * quad - 0.5 * logdet -
           0.5 * static_cast<double>(n) * kLogTwoPi;
}

inline double log_marginal_likelihood(const Dataset& data,
                                      const KernelHyperparameters& hyp) {
    return log_marginal_likelihood(build_gram(data, hyp), data.outcomes());
}

/// Immutable GP regression snapshot: dataset plus, for every hyperparameter
/// sample, the cached Cholesky factor and the solve K^-1 y. Prediction is
/// read-only and safe to call concurrently.
class GpSurrogate {
public:
    GpSurrogate(Dataset data, std::vector<KernelHyperparameters> hyp_samples)
        : data_(std::move(data)), hyp_(std::move(hyp_samples)) {
        if (data_.size() < 1) {
            throw std::invalid_argument("GpSurrogate: dataset must be non-empty");
        }
        if (hyp_.empty()) {
            throw std::invalid_argument(
                "GpSurrogate: need at least one hyperparameter sample");
        }
        const DatasetGeometry geom(data_.points());
        factors_.reserve(hyp_.size());
        alphas_.reserve(hyp_.size());
        for (const auto& h : hyp_) {
            GramFactor f = build_gram(geom, h);
            Vec alpha = f.L.triangularView<Eigen::Lower>().solve(data_.outcomes());
            f.L.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
            factors_.push_back(std::move(f));
            alphas_.push_back(std::move(alpha));
        }
    }

    const Dataset& data() const { return data_; }
    const std::vector<KernelHyperparameters>& hyperparameters() const {
        return hyp_;
    }
    Eigen::Index num_samples() const {
        return static_cast<Eigen::Index>(hyp_.size());
    }

    /// Predictive mean/variance per hyperparameter sample at a query point.
    PosteriorPrediction predict(const Vec& x) const {
        const Eigen::Index m = num_samples();
        PosteriorPrediction pred;
        pred.means.resize(m);
        pred.variances.resize(m);
        Vec kvec(data_.size());
        for (Eigen::Index s = 0; s < m; ++s) {
            const auto& h = hyp_[static_cast<std::size_t>(s)];
            cross_covariance(x, h, kvec);
            pred.means[s] = kvec.dot(alphas_[static_cast<std::size_t>(s)]);
            Vec v = factors_[static_cast<std::size_t>(s)]
                        .L.triangularView<Eigen::Lower>()
                        .solve(kvec);
            const double var = h.signal_variance() - v.squaredNorm();
            pred.variances[s] = var > 0.0 ? var : 0.0;
        }
        return pred;
    }

    /// Predictive mean averaged over the hyperparameter samples.
    double mixture_mean(const Vec& x) const {
        const Eigen::Index m = num_samples();
        double total = 0.0;
        Vec kvec(data_.size());
        for (Eigen::Index s = 0; s < m; ++s) {
            cross_covariance(x, hyp_[static_cast<std::size_t>(s)], kvec);
            total += kvec.dot(alphas_[static_cast<std::size_t>(s)]);
        }
        return total / static_cast<double>(m);
    }

private:
    void cross_covariance(const Vec& x, const KernelHyperparameters& h,
                          Vec& out) const {
        const Mat& X = data_.points();
        const Eigen::Index n = X.rows();
        const Eigen::Index d = X.cols();
        const double sf2 = h.signal_variance();
        Vec inv_l(d);
        for (Eigen::Index k = 0; k < d; ++k) inv_l[k] = 1.0 / h.lengthscale(k);
        for (Eigen::Index i = 0; i < n; ++i) {
            double r2 = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                const double u = (X(i, k) - x[k]) * inv_l[k];
                r2 += u * u;
            }
            const double s = std::sqrt(5.0 * r2);
            out[i] = sf2 * (1.0 + s + s * s / 3.0) * std::exp(-s);
        }
    }

    Dataset data_;
    std::vector<KernelHyperparameters> hyp_;
    std::vector<GramFactor> factors_;
    std::vector<Vec> alphas_;
};

}  // namespace ubo

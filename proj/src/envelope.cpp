#include "tara/envelope.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tara/errors.hpp"

namespace tara {

const char* to_string(FeatureSubset s) {
    switch (s) {
        case FeatureSubset::full: return "full";
        case FeatureSubset::s_only: return "s-only";
        case FeatureSubset::cp_only: return "cp-only";
        case FeatureSubset::click_only: return "click-only";
    }
    return "?";
}

FeatureSubset subset_from_string(std::string_view name) {
    for (FeatureSubset s : {FeatureSubset::full, FeatureSubset::s_only, FeatureSubset::cp_only,
                            FeatureSubset::click_only}) {
        if (name == to_string(s)) return s;
    }
    throw ConfigError("unknown feature subset '" + std::string(name) + "'");
}

std::vector<int> subset_indices(FeatureSubset s) {
    switch (s) {
        case FeatureSubset::full: return {0, 1, 2, 3, 4, 5, 6};
        case FeatureSubset::s_only: return {0};
        case FeatureSubset::cp_only: return {1, 2, 3, 4, 5, 6};  // everything but |S|
        case FeatureSubset::click_only: return {1, 2, 3, 4};
    }
    return {};
}

namespace {

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    double m = v[n / 2];
    if (n % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
        m = 0.5 * (m + v[n / 2 - 1]);
    }
    return m;
}

Eigen::VectorXd mahalanobis_sq(const Eigen::MatrixXd& x, const Eigen::VectorXd& mu,
                               const Eigen::MatrixXd& prec) {
    const Eigen::MatrixXd centered = x.rowwise() - mu.transpose();
    return ((centered * prec).array() * centered.array()).rowwise().sum();
}

Eigen::MatrixXd invert_spd(const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw DataError("singular covariance");
    return llt.solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
}

struct MeanCov {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;  // ridge already applied
    double ridge = 0.0;
};

MeanCov mean_cov_with_ridge(const Eigen::MatrixXd& x) {
    const auto n = static_cast<double>(x.rows());
    const int d = static_cast<int>(x.cols());
    MeanCov out;
    out.mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - out.mean.transpose();
    out.cov = centered.transpose() * centered / std::max(n - 1.0, 1.0);
    if (!(out.cov.trace() > 0.0)) throw DataError("singular covariance");
    out.ridge = 1e-6 * out.cov.trace() / static_cast<double>(d);
    out.cov += out.ridge * Eigen::MatrixXd::Identity(d, d);
    return out;
}

}  // namespace

EnvelopeModel fit_envelope(std::span<const FeatureVector> features, double target_fpr,
                           FeatureSubset subset) {
    if (!(target_fpr > 0.0) || !(target_fpr < 1.0))
        throw std::invalid_argument("target_fpr must be in (0, 1)");
    EnvelopeModel model;
    model.feature_indices = subset_indices(subset);
    model.target_fpr = target_fpr;
    const int d = model.dim();
    const auto n = static_cast<std::int64_t>(features.size());
    if (n < 8 * d) {
        throw DataError("too few calibration feature vectors: " + std::to_string(n) +
                        " < " + std::to_string(8 * d));
    }

    Eigen::MatrixXd raw(n, d);
    for (std::int64_t i = 0; i < n; ++i) {
        const auto arr = features[static_cast<std::size_t>(i)].to_array();
        for (int j = 0; j < d; ++j) raw(i, j) = arr[static_cast<std::size_t>(model.feature_indices[j])];
    }

    // Robust per-coordinate standardization: median and scaled MAD, falling
    // back to the sample SD, then to 1 for a constant coordinate.
    model.std_center.resize(d);
    model.std_scale.resize(d);
    for (int j = 0; j < d; ++j) {
        std::vector<double> col(raw.col(j).data(), raw.col(j).data() + n);
        const double med = median_of(col);
        std::vector<double> dev(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) dev[i] = std::abs(col[i] - med);
        double scale = 1.4826 * median_of(dev);
        if (scale <= 0.0) {
            const double mean = raw.col(j).mean();
            scale = std::sqrt((raw.col(j).array() - mean).square().sum() /
                              std::max<double>(n - 1.0, 1.0));
        }
        if (scale <= 0.0) scale = 1.0;
        model.std_center[j] = med;
        model.std_scale[j] = scale;
    }
    Eigen::MatrixXd x = raw;
    for (int j = 0; j < d; ++j) {
        x.col(j) = (raw.col(j).array() - model.std_center[j]) / model.std_scale[j];
    }

    // 3 reweighting passes: refit on the 90% of points with the smallest
    // Mahalanobis distances under the previous estimate.
    std::vector<std::int64_t> kept(static_cast<std::size_t>(n));
    std::iota(kept.begin(), kept.end(), 0);
    MeanCov mc = mean_cov_with_ridge(x);
    Eigen::MatrixXd prec = invert_spd(mc.cov);
    for (int iter = 0; iter < 3; ++iter) {
        const Eigen::VectorXd d2 = mahalanobis_sq(x, mc.mean, prec);
        std::vector<std::int64_t> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::int64_t a, std::int64_t b) { return d2(a) < d2(b); });
        const auto keep_n = static_cast<std::size_t>(
            std::max<std::int64_t>(8 * d, n - n / 10));
        kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(
                                                       std::min<std::size_t>(keep_n, order.size())));
        Eigen::MatrixXd xk(kept.size(), d);
        for (std::size_t i = 0; i < kept.size(); ++i) xk.row(static_cast<std::int64_t>(i)) = x.row(kept[i]);
        mc = mean_cov_with_ridge(xk);
        prec = invert_spd(mc.cov);
    }

    model.center.assign(mc.mean.data(), mc.mean.data() + d);
    model.precision.resize(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) model.precision[static_cast<std::size_t>(i) * d + j] = prec(i, j);
    model.ridge = mc.ridge;

    // Threshold: the (1 - fpr) order statistic of all calibration distances.
    const Eigen::VectorXd d2 = mahalanobis_sq(x, mc.mean, prec);
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) dist[static_cast<std::size_t>(i)] = std::sqrt(d2(i));
    std::sort(dist.begin(), dist.end());
    const auto rank = static_cast<std::size_t>(
        std::clamp<std::int64_t>(static_cast<std::int64_t>(
                                     std::ceil((1.0 - target_fpr) * static_cast<double>(n))) - 1,
                                 0, n - 1));
    model.tau = dist[rank];
    return model;
}

double anomaly_score(const EnvelopeModel& model, const FeatureVector& f) {
    const int d = model.dim();
    const auto arr = f.to_array();
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) {
        x(j) = (arr[static_cast<std::size_t>(model.feature_indices[j])] - model.std_center[j]) /
               model.std_scale[j];
    }
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> prec(
        model.precision.data(), d, d);
    Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(model.center.data(), d);
    const Eigen::VectorXd diff = x - c;
    return std::sqrt(diff.dot(prec * diff));
}

}  // namespace tara

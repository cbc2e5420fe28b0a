#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace tara {

// The 7-component dataset descriptor scored by the one-class envelope.
struct FeatureVector {
    double abs_s = 0.0;      // |S|
    double p_a = 0.0;        // A-only click rate
    double p_b = 0.0;        // B-only click rate
    double p_ab = 0.0;       // coincidence rate
    double p_empty = 0.0;    // double no-click rate
    double tara_k = 0.0;     // KS distance of the dataset's p-values from uniform
    double set_size = 0.0;   // mean conformal prediction set size

    static constexpr int kDim = 7;

    std::array<double, kDim> to_array() const {
        return {abs_s, p_a, p_b, p_ab, p_empty, tara_k, set_size};
    }
};

// Feature masks for the ablation study.
enum class FeatureSubset { full, s_only, cp_only, click_only };

const char* to_string(FeatureSubset s);
FeatureSubset subset_from_string(std::string_view name);
std::vector<int> subset_indices(FeatureSubset s);

// One-class elliptic envelope: robust location/scatter of standardized LHV
// features, scored by Mahalanobis distance.
struct EnvelopeModel {
    std::vector<int> feature_indices;     // columns of FeatureVector in use
    std::vector<double> std_center;       // per-coordinate robust standardization
    std::vector<double> std_scale;
    std::vector<double> center;           // robust location, standardized space
    std::vector<double> precision;        // row-major d x d inverse scatter
    double tau = 0.0;                     // decision threshold on the distance
    double ridge = 0.0;
    double target_fpr = 0.05;

    int dim() const { return static_cast<int>(feature_indices.size()); }
};

// Robust fit: iteratively reweighted mean/covariance (3 iterations, hard
// rejection of the top 10% Mahalanobis distances), ridge 1e-6 * trace/d on
// the covariance diagonal, tau at the empirical (1 - target_fpr) quantile of
// calibration distances. Requires >= 8 samples per retained dimension.
EnvelopeModel fit_envelope(std::span<const FeatureVector> features, double target_fpr,
                           FeatureSubset subset = FeatureSubset::full);

// Mahalanobis distance of a feature vector under the fitted envelope.
double anomaly_score(const EnvelopeModel& model, const FeatureVector& f);

}  // namespace tara

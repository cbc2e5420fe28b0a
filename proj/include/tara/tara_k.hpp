#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tara/chsh.hpp"
#include "tara/conformal.hpp"
#include "tara/envelope.hpp"
#include "tara/ks.hpp"
#include "tara/rng.hpp"

namespace tara {

enum class Decision { classical, quantum };

const char* to_string(Decision d);

struct FeatureExtraction {
    FeatureVector features;
    std::vector<double> pvalues;  // smoothed Mondrian p-values, record order
};

// Dataset -> feature vector against fitted conformal artifacts. The tara_k
// slot is the one-sample KS distance of the dataset's smoothed p-values from
// uniform; set_size is evaluated at `alpha`.
FeatureExtraction extract_features(std::span<const MeasurementRecord> records,
                                   const LhvConditionalModel& model, const CalibrationSet& cal,
                                   double alpha, Rng& rng);

struct BatchReport {
    Decision decision = Decision::classical;
    double anomaly_score = 0.0;
    double tau = 0.0;
    bool envelope_triggered = false;
    double tara_k_two_sample = 0.0;  // KS distance calibration vs test p-values
    double ks_limit = 0.0;
    double ks_alpha = 0.05;
    bool ks_triggered = false;
    std::size_t n_cal_pvalues = 0;
    std::size_t n_test_pvalues = 0;
    FeatureVector features;
};

// Quantum iff the envelope distance exceeds tau OR the two-sample KS between
// the reference p-values and the test p-values exceeds its threshold. The two
// levels (envelope target FPR, ks_alpha) are independent knobs; the combined
// false-positive rate is bounded by their sum.
BatchReport detect_batch(const EnvelopeModel& envelope, std::span<const double> cal_pvalues,
                         const FeatureExtraction& test, double ks_alpha = 0.05);

}  // namespace tara

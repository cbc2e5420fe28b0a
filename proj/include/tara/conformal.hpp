#pragma once

#include <array>
#include <span>
#include <vector>

#include "tara/chsh.hpp"
#include "tara/rng.hpp"

namespace tara {

// Smoothed per-context outcome-pair frequencies fitted from LHV data; the
// source of nonconformity scores. Laplace smoothing keeps every entry
// strictly positive so scores stay finite.
struct LhvConditionalModel {
    double pseudo_count = 1.0;
    std::array<std::array<double, 9>, 4> table{};  // rows sum to 1
};

// table[c][pair] = (count + pseudo_count) / (n_c + 9 * pseudo_count).
// Requires all four contexts present and pseudo_count > 0.
LhvConditionalModel fit_lhv_model(std::span<const MeasurementRecord> records,
                                  double pseudo_count = 1.0);

// Nonconformity score: -log of the smoothed conditional pair probability.
double score(const LhvConditionalModel& model, Context context, OutcomePair pair);

// Per-context sorted nonconformity scores from LHV calibration data.
struct CalibrationSet {
    std::array<std::vector<double>, 4> scores;  // ascending per context

    std::size_t total() const {
        return scores[0].size() + scores[1].size() + scores[2].size() + scores[3].size();
    }
};

CalibrationSet make_calibration(const LhvConditionalModel& model,
                                std::span<const MeasurementRecord> records);

// Split conformal p-value: (1 + #{s_i >= test}) / (1 + n). Ties count as >=,
// so the value is conservative (super-uniform). Empty calibration gives 1.
double conformal_pvalue(std::span<const double> sorted_scores, double test_score);

// Randomized-tie variant: (#{s_i > test} + U * (1 + #{s_i = test})) / (1 + n)
// with U uniform on (0, 1]; exactly Uniform(0,1] under exchangeability.
double conformal_pvalue_smoothed(std::span<const double> sorted_scores, double test_score,
                                 Rng& rng);

// Conformal p-value restricted to the test point's own context. Throws
// DataError("uncalibrated context ...") when that context has no scores.
double mondrian_pvalue(const CalibrationSet& cal, Context context, double test_score);
double mondrian_pvalue_smoothed(const CalibrationSet& cal, Context context, double test_score,
                                Rng& rng);

// All outcome pairs whose (deterministic) Mondrian p-value exceeds alpha.
// alpha = 1 yields the empty set; alpha outside (0, 1] is rejected.
std::vector<OutcomePair> prediction_set(const LhvConditionalModel& model,
                                        const CalibrationSet& cal, Context context,
                                        double alpha);

// Mean |C_alpha| over the dataset's trials.
double expected_set_size(const LhvConditionalModel& model, const CalibrationSet& cal,
                         std::span<const MeasurementRecord> records, double alpha);

// Fraction of trials whose observed pair lies in the prediction set.
double empirical_coverage(const LhvConditionalModel& model, const CalibrationSet& cal,
                          std::span<const MeasurementRecord> records, double alpha);

// Mondrian p-value of every trial, in record order.
std::vector<double> dataset_pvalues(const LhvConditionalModel& model, const CalibrationSet& cal,
                                    std::span<const MeasurementRecord> records);
std::vector<double> dataset_pvalues_smoothed(const LhvConditionalModel& model,
                                             const CalibrationSet& cal,
                                             std::span<const MeasurementRecord> records,
                                             Rng& rng);

}  // namespace tara

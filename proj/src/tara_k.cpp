#include "tara/tara_k.hpp"

#include <cmath>

namespace tara {

const char* to_string(Decision d) {
    return d == Decision::classical ? "Classical" : "Quantum";
}

FeatureExtraction extract_features(std::span<const MeasurementRecord> records,
                                   const LhvConditionalModel& model, const CalibrationSet& cal,
                                   double alpha, Rng& rng) {
    FeatureExtraction out;
    const CorrelationSummary summary = summarize(records);
    out.features.abs_s = std::abs(chsh_s(summary));
    out.features.p_a = summary.clicks.a_only;
    out.features.p_b = summary.clicks.b_only;
    out.features.p_ab = summary.clicks.both;
    out.features.p_empty = summary.clicks.neither;
    out.pvalues = dataset_pvalues_smoothed(model, cal, records, rng);
    out.features.tara_k = ks_uniform(out.pvalues);
    out.features.set_size = expected_set_size(model, cal, records, alpha);
    return out;
}

BatchReport detect_batch(const EnvelopeModel& envelope, std::span<const double> cal_pvalues,
                         const FeatureExtraction& test, double ks_alpha) {
    BatchReport report;
    report.features = test.features;
    report.ks_alpha = ks_alpha;
    report.anomaly_score = anomaly_score(envelope, test.features);
    report.tau = envelope.tau;
    report.envelope_triggered = report.anomaly_score > envelope.tau;
    report.n_cal_pvalues = cal_pvalues.size();
    report.n_test_pvalues = test.pvalues.size();
    report.tara_k_two_sample = ks_two_sample(cal_pvalues, test.pvalues);
    report.ks_limit = ks_threshold(static_cast<std::int64_t>(cal_pvalues.size()),
                                   static_cast<std::int64_t>(test.pvalues.size()), ks_alpha);
    report.ks_triggered = report.tara_k_two_sample > report.ks_limit;
    report.decision = (report.envelope_triggered || report.ks_triggered) ? Decision::quantum
                                                                         : Decision::classical;
    return report;
}

}  // namespace tara

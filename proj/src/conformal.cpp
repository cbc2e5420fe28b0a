#include "tara/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tara/errors.hpp"

namespace tara {

LhvConditionalModel fit_lhv_model(std::span<const MeasurementRecord> records,
                                  double pseudo_count) {
    if (records.empty()) throw std::invalid_argument("empty dataset");
    if (!(pseudo_count > 0.0)) throw std::invalid_argument("pseudo_count must be positive");

    std::array<std::array<std::int64_t, 9>, 4> counts{};
    std::array<std::int64_t, 4> totals{};
    for (const MeasurementRecord& r : records) {
        counts[r.context.index()][OutcomePair{r.a, r.b}.index()] += 1;
        totals[r.context.index()] += 1;
    }
    std::string missing;
    for (const Context& c : kContexts) {
        if (totals[c.index()] == 0) {
            if (!missing.empty()) missing += ", ";
            missing += c.name();
        }
    }
    if (!missing.empty()) throw DataError("missing contexts: " + missing);

    LhvConditionalModel model;
    model.pseudo_count = pseudo_count;
    for (int c = 0; c < 4; ++c) {
        const double denom = static_cast<double>(totals[c]) + 9.0 * pseudo_count;
        for (int p = 0; p < 9; ++p) {
            model.table[c][p] = (static_cast<double>(counts[c][p]) + pseudo_count) / denom;
        }
    }
    return model;
}

double score(const LhvConditionalModel& model, Context context, OutcomePair pair) {
    return -std::log(model.table[context.index()][pair.index()]);
}

CalibrationSet make_calibration(const LhvConditionalModel& model,
                                std::span<const MeasurementRecord> records) {
    CalibrationSet cal;
    for (const MeasurementRecord& r : records) {
        cal.scores[r.context.index()].push_back(score(model, r.context, OutcomePair{r.a, r.b}));
    }
    for (auto& v : cal.scores) std::sort(v.begin(), v.end());
    return cal;
}

double conformal_pvalue(std::span<const double> sorted_scores, double test_score) {
    const auto n = sorted_scores.size();
    if (n == 0) return 1.0;
    const auto ge = sorted_scores.end() -
                    std::lower_bound(sorted_scores.begin(), sorted_scores.end(), test_score);
    return static_cast<double>(1 + ge) / static_cast<double>(1 + n);
}

double conformal_pvalue_smoothed(std::span<const double> sorted_scores, double test_score,
                                 Rng& rng) {
    const auto n = sorted_scores.size();
    const double u = rng.uniform_open0();
    if (n == 0) return u;
    const auto lo = std::lower_bound(sorted_scores.begin(), sorted_scores.end(), test_score);
    const auto hi = std::upper_bound(lo, sorted_scores.end(), test_score);
    const auto gt = sorted_scores.end() - hi;
    const auto eq = hi - lo;
    return (static_cast<double>(gt) + u * static_cast<double>(1 + eq)) /
           static_cast<double>(1 + n);
}

namespace {

const std::vector<double>& context_scores(const CalibrationSet& cal, Context context) {
    const std::vector<double>& s = cal.scores[context.index()];
    if (s.empty()) throw DataError("uncalibrated context " + context.name());
    return s;
}

void check_set_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("alpha must be in (0, 1]");
}

}  // namespace

double mondrian_pvalue(const CalibrationSet& cal, Context context, double test_score) {
    return conformal_pvalue(context_scores(cal, context), test_score);
}

double mondrian_pvalue_smoothed(const CalibrationSet& cal, Context context, double test_score,
                                Rng& rng) {
    return conformal_pvalue_smoothed(context_scores(cal, context), test_score, rng);
}

std::vector<OutcomePair> prediction_set(const LhvConditionalModel& model,
                                        const CalibrationSet& cal, Context context,
                                        double alpha) {
    check_set_alpha(alpha);
    std::vector<OutcomePair> out;
    for (int i = 0; i < kNumOutcomePairs; ++i) {
        const OutcomePair pair = OutcomePair::from_index(i);
        if (mondrian_pvalue(cal, context, score(model, context, pair)) > alpha) {
            out.push_back(pair);
        }
    }
    return out;
}

namespace {

// Set sizes and membership depend on the record only through its context, so
// precompute both per context.
struct SetTable {
    std::array<int, 4> size{};
    std::array<std::array<bool, 9>, 4> member{};
};

SetTable build_set_table(const LhvConditionalModel& model, const CalibrationSet& cal,
                         double alpha) {
    SetTable t;
    for (const Context& c : kContexts) {
        const auto set = prediction_set(model, cal, c, alpha);
        t.size[c.index()] = static_cast<int>(set.size());
        for (const OutcomePair& p : set) t.member[c.index()][p.index()] = true;
    }
    return t;
}

}  // namespace

double expected_set_size(const LhvConditionalModel& model, const CalibrationSet& cal,
                         std::span<const MeasurementRecord> records, double alpha) {
    if (records.empty()) throw std::invalid_argument("empty dataset");
    const SetTable t = build_set_table(model, cal, alpha);
    double sum = 0.0;
    for (const MeasurementRecord& r : records) sum += t.size[r.context.index()];
    return sum / static_cast<double>(records.size());
}

double empirical_coverage(const LhvConditionalModel& model, const CalibrationSet& cal,
                          std::span<const MeasurementRecord> records, double alpha) {
    if (records.empty()) throw std::invalid_argument("empty dataset");
    const SetTable t = build_set_table(model, cal, alpha);
    std::int64_t covered = 0;
    for (const MeasurementRecord& r : records) {
        if (t.member[r.context.index()][OutcomePair{r.a, r.b}.index()]) covered += 1;
    }
    return static_cast<double>(covered) / static_cast<double>(records.size());
}

std::vector<double> dataset_pvalues(const LhvConditionalModel& model, const CalibrationSet& cal,
                                    std::span<const MeasurementRecord> records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const MeasurementRecord& r : records) {
        out.push_back(mondrian_pvalue(cal, r.context, score(model, r.context, OutcomePair{r.a, r.b})));
    }
    return out;
}

std::vector<double> dataset_pvalues_smoothed(const LhvConditionalModel& model,
                                             const CalibrationSet& cal,
                                             std::span<const MeasurementRecord> records,
                                             Rng& rng) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const MeasurementRecord& r : records) {
        out.push_back(mondrian_pvalue_smoothed(cal, r.context,
                                               score(model, r.context, OutcomePair{r.a, r.b}), rng));
    }
    return out;
}

}  // namespace tara

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tara {

// Measurement context: Alice's binary setting x and Bob's binary setting z.
struct Context {
    std::uint8_t x = 0;
    std::uint8_t z = 0;

    constexpr int index() const { return 2 * x + z; }  // 00, 01, 10, 11

    static constexpr Context from_index(int i) {
        return Context{static_cast<std::uint8_t>((i >> 1) & 1),
                       static_cast<std::uint8_t>(i & 1)};
    }

    std::string name() const { return std::string(1, char('0' + x)) + char('0' + z); }

    friend bool operator==(const Context&, const Context&) = default;
};

inline constexpr std::array<Context, 4> kContexts = {
    Context{0, 0}, Context{0, 1}, Context{1, 0}, Context{1, 1}};

// One party's measurement result. no_click marks a missing detector event and
// is excluded from coincidence correlator products.
enum class Outcome : std::int8_t { minus = -1, no_click = 0, plus = +1 };

constexpr int to_int(Outcome o) { return static_cast<int>(o); }
Outcome outcome_from_int(int v);  // throws DataError unless v in {-1, 0, 1}

// Dense index for tabulation: minus -> 0, no_click -> 1, plus -> 2.
constexpr int outcome_index(Outcome o) { return static_cast<int>(o) + 1; }
constexpr Outcome outcome_from_index(int i) { return static_cast<Outcome>(i - 1); }

constexpr int kNumOutcomePairs = 9;

struct OutcomePair {
    Outcome a = Outcome::no_click;
    Outcome b = Outcome::no_click;

    constexpr int index() const { return 3 * outcome_index(a) + outcome_index(b); }
    static constexpr OutcomePair from_index(int i) {
        return OutcomePair{outcome_from_index(i / 3), outcome_from_index(i % 3)};
    }
    friend bool operator==(const OutcomePair&, const OutcomePair&) = default;
};

// One CHSH trial.
struct MeasurementRecord {
    std::int64_t trial = 0;
    Context context;
    Outcome a = Outcome::no_click;
    Outcome b = Outcome::no_click;
};

// Click-category rates over all trials. The four categories partition the
// dataset, so the rates sum to 1.
struct ClickRates {
    double a_only = 0.0;   // Alice clicked, Bob did not
    double b_only = 0.0;   // Bob clicked, Alice did not
    double both = 0.0;     // coincidence
    double neither = 0.0;  // double no-click
};

struct CorrelationSummary {
    // Coincidence correlators: mean of a*b over both-click trials per context.
    std::array<double, 4> e{};
    // No-postselection correlators: mean of a*b over ALL trials in the
    // context, with any no-click contributing 0. Bounded by |S| <= 2 for
    // every local model regardless of detector behaviour, which the
    // coincidence estimator is not.
    std::array<double, 4> e_uncorrected{};
    std::array<std::int64_t, 4> n_coincident{};
    std::array<std::int64_t, 4> n_total{};
    // Contexts that had trials but no coincidences; their e is 0, not NaN.
    std::array<bool, 4> zero_coincidence{};
    ClickRates clicks;
};

// Per-context tallies -> correlators and click rates.
// Throws on an empty dataset or when a context has no trials at all.
CorrelationSummary summarize(std::span<const MeasurementRecord> records);

// S = E00 + E01 + E10 - E11 over the coincidence correlators.
double chsh_s(const CorrelationSummary& summary);
double chsh_s(const std::array<double, 4>& correlators);

// Same combination over the no-postselection correlators.
double chsh_s_uncorrected(const CorrelationSummary& summary);

// Pooled standard error of S: sqrt(sum_c (1 - e_c^2) / n_coincident[c]).
double chsh_standard_error(const CorrelationSummary& summary);
// Pooled standard error of the no-postselection S (empirical per-context
// variance of the 0-imputed products over n_total).
double chsh_standard_error_uncorrected(const CorrelationSummary& summary);

enum class Regime { classical, quantum, superquantum };

const char* to_string(Regime r);

// |s| <= 2 classical, <= 2*sqrt(2) quantum, <= 4 superquantum; boundaries
// belong to the lower regime. |s| beyond 4 (plus tolerance) is rejected as
// non-physical.
Regime classify_regime(double s);

inline constexpr double kTsirelsonBound = 2.8284271247461903;  // 2*sqrt(2)

}  // namespace tara

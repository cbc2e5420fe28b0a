#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tara/chsh.hpp"
#include "tara/rng.hpp"

namespace tara {

// Local deterministic response strategy: Alice answers a0/a1 to setting 0/1,
// Bob answers b0/b1. The 16 such strategies are the extreme points of the
// LHV correlation polytope.
struct DeterministicStrategy {
    int a0 = +1, a1 = +1, b0 = +1, b1 = +1;

    constexpr int respond_a(int x) const { return x ? a1 : a0; }
    constexpr int respond_b(int z) const { return z ? b1 : b0; }

    constexpr double s_value() const {
        return static_cast<double>(a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1);
    }
};

// All 16 strategies; index bit k set means response +1 for (a0, a1, b0, b1).
std::array<DeterministicStrategy, 16> enumerate_strategies();

enum class Model {
    lhv_deterministic,
    lhv_mixture,
    lhv_detection,
    lhv_memory,
    lhv_communication,
    quantum_singlet,
    pr_box,
};

const char* to_string(Model m);
Model model_from_string(std::string_view name);  // throws ConfigError

enum class ContextSchedule { round_robin, uniform };

const char* to_string(ContextSchedule s);
ContextSchedule schedule_from_string(std::string_view name);

inline constexpr std::array<double, 16> kUniformWeights = {
    1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16,
    1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16};

struct GeneratorConfig {
    Model model = Model::lhv_mixture;
    std::int64_t trials_per_context = 1000;
    std::uint64_t seed = 0;
    ContextSchedule schedule = ContextSchedule::round_robin;

    // lhv-deterministic
    int strategy_index = 15;

    // lhv-mixture / lhv-communication: strategy weights over the 16 extreme
    // points; must be non-negative and sum to 1.
    std::array<double, 16> weights = kUniformWeights;

    // Detection efficiency. lhv-detection: each side clicks iff
    // |cos(lambda - theta)| >= 1 - eta (hidden-variable-dependent clicks, the
    // detection loophole). quantum-singlet: i.i.d. per-side click probability.
    double eta = 1.0;

    // lhv-memory: two-state switching between two strategies driven by the
    // previous outcome products, plus a seeded jitter flip that keeps the
    // state chain aperiodic (a fully deterministic rule can phase-lock with
    // the round-robin schedule and leak setting information into lambda).
    int memory_strategy_a = 14;
    int memory_strategy_b = 7;
    int memory_order = 1;
    double memory_jitter = 0.25;

    // lhv-communication: probability that Bob's response additionally uses
    // Alice's setting (PR-box signaling table); kappa > 0 can push |S| past 2.
    double kappa = 0.0;

    // quantum-singlet
    double visibility = 1.0;
    std::array<double, 2> alice_angles = {0.0, 1.5707963267948966};    // 0, pi/2
    std::array<double, 2> bob_angles = {0.7853981633974483, -0.7853981633974483};  // pi/4, -pi/4

    void validate() const;  // throws ConfigError on out-of-range parameters
};

enum class TruthLabel { classical, quantum };

const char* to_string(TruthLabel l);

struct GeneratedDataset {
    std::vector<MeasurementRecord> records;
    TruthLabel label = TruthLabel::classical;
    GeneratorConfig config;
};

// Seeded, reproducible trial stream: identical config -> bit-identical
// records. Contexts cycle 00,01,10,11 under the round-robin schedule.
GeneratedDataset generate(const GeneratorConfig& config);

// Exact target correlators, for analytic cross-checks.
std::array<double, 4> singlet_correlators(double visibility,
                                          const std::array<double, 2>& alice_angles,
                                          const std::array<double, 2>& bob_angles);
std::array<double, 4> mixture_correlators(std::span<const double> weights);

// Exact outcome-pair distribution of an LHV mixture per context (oracle for
// conformal-model fits). Row c holds 9 pair probabilities.
std::array<std::array<double, 9>, 4> mixture_pair_distribution(std::span<const double> weights);

}  // namespace tara

#include "tara/datagen.hpp"

#include <cmath>
#include <string>

#include "tara/errors.hpp"

namespace tara {

std::array<DeterministicStrategy, 16> enumerate_strategies() {
    std::array<DeterministicStrategy, 16> out;
    for (int i = 0; i < 16; ++i) {
        out[i] = DeterministicStrategy{
            (i & 1) ? +1 : -1,
            (i & 2) ? +1 : -1,
            (i & 4) ? +1 : -1,
            (i & 8) ? +1 : -1,
        };
    }
    return out;
}

const char* to_string(Model m) {
    switch (m) {
        case Model::lhv_deterministic: return "lhv-deterministic";
        case Model::lhv_mixture: return "lhv-mixture";
        case Model::lhv_detection: return "lhv-detection";
        case Model::lhv_memory: return "lhv-memory";
        case Model::lhv_communication: return "lhv-communication";
        case Model::quantum_singlet: return "quantum-singlet";
        case Model::pr_box: return "pr-box";
    }
    return "?";
}

Model model_from_string(std::string_view name) {
    for (Model m : {Model::lhv_deterministic, Model::lhv_mixture, Model::lhv_detection,
                    Model::lhv_memory, Model::lhv_communication, Model::quantum_singlet,
                    Model::pr_box}) {
        if (name == to_string(m)) return m;
    }
    throw ConfigError("unknown model '" + std::string(name) + "'");
}

const char* to_string(ContextSchedule s) {
    return s == ContextSchedule::round_robin ? "round-robin" : "uniform";
}

ContextSchedule schedule_from_string(std::string_view name) {
    if (name == "round-robin") return ContextSchedule::round_robin;
    if (name == "uniform") return ContextSchedule::uniform;
    throw ConfigError("unknown schedule '" + std::string(name) + "'");
}

const char* to_string(TruthLabel l) {
    return l == TruthLabel::classical ? "classical" : "quantum";
}

void GeneratorConfig::validate() const {
    if (trials_per_context <= 0) throw ConfigError("trials_per_context must be positive");
    if (strategy_index < 0 || strategy_index > 15)
        throw ConfigError("strategy_index must be in [0, 15]");
    if (memory_strategy_a < 0 || memory_strategy_a > 15 || memory_strategy_b < 0 ||
        memory_strategy_b > 15)
        throw ConfigError("memory strategy indices must be in [0, 15]");
    if (memory_order < 1) throw ConfigError("memory_order must be >= 1");
    if (memory_jitter < 0.0 || memory_jitter > 1.0)
        throw ConfigError("memory_jitter must be in [0, 1]");
    if (!(eta > 0.0) || eta > 1.0) throw ConfigError("eta must be in (0, 1]");
    if (kappa < 0.0 || kappa > 1.0) throw ConfigError("kappa must be in [0, 1]");
    if (visibility < 0.0 || visibility > 1.0)
        throw ConfigError("visibility must be in [0, 1]");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("weights must be non-negative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw ConfigError("weights must sum to 1");
}

std::array<double, 4> singlet_correlators(double visibility,
                                          const std::array<double, 2>& alice_angles,
                                          const std::array<double, 2>& bob_angles) {
    std::array<double, 4> e{};
    for (const Context& c : kContexts) {
        e[c.index()] = visibility * std::cos(alice_angles[c.x] - bob_angles[c.z]);
    }
    return e;
}

std::array<double, 4> mixture_correlators(std::span<const double> weights) {
    const auto strategies = enumerate_strategies();
    std::array<double, 4> e{};
    for (std::size_t i = 0; i < weights.size() && i < 16; ++i) {
        for (const Context& c : kContexts) {
            e[c.index()] += weights[i] * strategies[i].respond_a(c.x) * strategies[i].respond_b(c.z);
        }
    }
    return e;
}

std::array<std::array<double, 9>, 4> mixture_pair_distribution(std::span<const double> weights) {
    const auto strategies = enumerate_strategies();
    std::array<std::array<double, 9>, 4> dist{};
    for (std::size_t i = 0; i < weights.size() && i < 16; ++i) {
        for (const Context& c : kContexts) {
            const OutcomePair pair{static_cast<Outcome>(strategies[i].respond_a(c.x)),
                                   static_cast<Outcome>(strategies[i].respond_b(c.z))};
            dist[c.index()][pair.index()] += weights[i];
        }
    }
    return dist;
}

namespace {

Context next_context(std::int64_t trial, ContextSchedule schedule, Rng& rng) {
    if (schedule == ContextSchedule::round_robin) {
        return kContexts[static_cast<std::size_t>(trial % 4)];
    }
    return Context{static_cast<std::uint8_t>(rng.uniform_int(2)),
                   static_cast<std::uint8_t>(rng.uniform_int(2))};
}

// Shared pipeline: per-trial outcome callback fills (a, b) given the context.
template <typename Fn>
std::vector<MeasurementRecord> run_trials(const GeneratorConfig& cfg, Rng& rng, Fn&& outcomes) {
    const std::int64_t n = 4 * cfg.trials_per_context;
    std::vector<MeasurementRecord> records;
    records.reserve(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t) {
        const Context c = next_context(t, cfg.schedule, rng);
        auto [a, b] = outcomes(c);
        records.push_back(MeasurementRecord{t, c, a, b});
    }
    return records;
}

std::pair<Outcome, Outcome> signed_pair(int a, int b) {
    return {static_cast<Outcome>(a), static_cast<Outcome>(b)};
}

}  // namespace

GeneratedDataset generate(const GeneratorConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const auto strategies = enumerate_strategies();

    GeneratedDataset out;
    out.config = config;
    out.label = (config.model == Model::quantum_singlet || config.model == Model::pr_box)
                    ? TruthLabel::quantum
                    : TruthLabel::classical;

    switch (config.model) {
        case Model::lhv_deterministic: {
            const DeterministicStrategy s = strategies[static_cast<std::size_t>(config.strategy_index)];
            out.records = run_trials(config, rng, [&](Context c) {
                return signed_pair(s.respond_a(c.x), s.respond_b(c.z));
            });
            break;
        }
        case Model::lhv_mixture: {
            out.records = run_trials(config, rng, [&](Context c) {
                const DeterministicStrategy& s =
                    strategies[static_cast<std::size_t>(rng.categorical(config.weights))];
                return signed_pair(s.respond_a(c.x), s.respond_b(c.z));
            });
            break;
        }
        case Model::lhv_detection: {
            const double window = 1.0 - config.eta;
            out.records = run_trials(config, rng, [&](Context c) {
                const double lambda = rng.uniform(0.0, 2.0 * 3.141592653589793);
                const double ca = std::cos(lambda - config.alice_angles[c.x]);
                const double cb = std::cos(lambda - config.bob_angles[c.z]);
                const Outcome a = std::abs(ca) >= window
                                      ? static_cast<Outcome>(ca >= 0.0 ? +1 : -1)
                                      : Outcome::no_click;
                const Outcome b = std::abs(cb) >= window
                                      ? static_cast<Outcome>(cb >= 0.0 ? +1 : -1)
                                      : Outcome::no_click;
                return std::pair{a, b};
            });
            break;
        }
        case Model::lhv_memory: {
            int state = 0;
            int window_parity = 0;
            std::int64_t seen = 0;
            out.records = run_trials(config, rng, [&](Context c) {
                const DeterministicStrategy& s = strategies[static_cast<std::size_t>(
                    state == 0 ? config.memory_strategy_a : config.memory_strategy_b)];
                const int a = s.respond_a(c.x);
                const int b = s.respond_b(c.z);
                // Switching rule: flip state when the product of the last
                // memory_order outcome products is -1, plus jitter.
                window_parity ^= (a * b < 0) ? 1 : 0;
                seen += 1;
                if (seen >= config.memory_order) {
                    if (window_parity == 1) state ^= 1;
                    window_parity = 0;
                    seen = 0;
                }
                if (rng.bernoulli(config.memory_jitter)) state ^= 1;
                return signed_pair(a, b);
            });
            break;
        }
        case Model::lhv_communication: {
            out.records = run_trials(config, rng, [&](Context c) {
                if (rng.bernoulli(config.kappa)) {
                    // Signaling round: Bob's outcome uses Alice's setting so
                    // that a*b = (-1)^(x z).
                    const int a = rng.sign();
                    const int b = ((c.x & c.z) ? -1 : +1) * a;
                    return signed_pair(a, b);
                }
                const DeterministicStrategy& s =
                    strategies[static_cast<std::size_t>(rng.categorical(config.weights))];
                return signed_pair(s.respond_a(c.x), s.respond_b(c.z));
            });
            break;
        }
        case Model::quantum_singlet: {
            const std::array<double, 4> e =
                singlet_correlators(config.visibility, config.alice_angles, config.bob_angles);
            out.records = run_trials(config, rng, [&](Context c) {
                const double exz = e[c.index()];
                const int ab = rng.uniform01() < 0.5 * (1.0 + exz) ? +1 : -1;
                const int a = rng.sign();
                const int b = ab * a;
                Outcome oa = static_cast<Outcome>(a);
                Outcome ob = static_cast<Outcome>(b);
                if (config.eta < 1.0) {
                    if (!rng.bernoulli(config.eta)) oa = Outcome::no_click;
                    if (!rng.bernoulli(config.eta)) ob = Outcome::no_click;
                }
                return std::pair{oa, ob};
            });
            break;
        }
        case Model::pr_box: {
            out.records = run_trials(config, rng, [&](Context c) {
                const int a = rng.sign();
                const int b = ((c.x & c.z) ? -1 : +1) * a;
                return signed_pair(a, b);
            });
            break;
        }
    }
    return out;
}

}  // namespace tara

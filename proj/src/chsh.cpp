#include "tara/chsh.hpp"

#include <cmath>
#include <stdexcept>

#include "tara/errors.hpp"

namespace tara {

Outcome outcome_from_int(int v) {
    if (v < -1 || v > 1) throw DataError("outcome must be -1, 0 or 1");
    return static_cast<Outcome>(v);
}

CorrelationSummary summarize(std::span<const MeasurementRecord> records) {
    if (records.empty()) throw std::invalid_argument("empty dataset");

    CorrelationSummary s;
    std::array<std::int64_t, 4> coincident_product_sum{};
    std::int64_t a_only = 0, b_only = 0, both = 0, neither = 0;

    for (const MeasurementRecord& r : records) {
        const int c = r.context.index();
        s.n_total[c] += 1;
        const bool a_click = r.a != Outcome::no_click;
        const bool b_click = r.b != Outcome::no_click;
        if (a_click && b_click) {
            both += 1;
            s.n_coincident[c] += 1;
            coincident_product_sum[c] += to_int(r.a) * to_int(r.b);
        } else if (a_click) {
            a_only += 1;
        } else if (b_click) {
            b_only += 1;
        } else {
            neither += 1;
        }
    }

    std::string missing;
    for (const Context& c : kContexts) {
        if (s.n_total[c.index()] == 0) {
            if (!missing.empty()) missing += ", ";
            missing += c.name();
        }
    }
    if (!missing.empty()) throw DataError("missing contexts: " + missing);

    for (int c = 0; c < 4; ++c) {
        if (s.n_coincident[c] > 0) {
            s.e[c] = static_cast<double>(coincident_product_sum[c]) /
                     static_cast<double>(s.n_coincident[c]);
        } else {
            s.e[c] = 0.0;
            s.zero_coincidence[c] = true;
        }
        s.e_uncorrected[c] = static_cast<double>(coincident_product_sum[c]) /
                             static_cast<double>(s.n_total[c]);
    }

    const double n = static_cast<double>(records.size());
    s.clicks.a_only = a_only / n;
    s.clicks.b_only = b_only / n;
    s.clicks.both = both / n;
    s.clicks.neither = neither / n;
    return s;
}

namespace {

void require_all_contexts(const CorrelationSummary& summary) {
    for (int c = 0; c < 4; ++c) {
        if (summary.n_total[c] == 0) {
            throw DataError("missing context " + Context::from_index(c).name());
        }
    }
}

}  // namespace

double chsh_s(const std::array<double, 4>& e) {
    return e[Context{0, 0}.index()] + e[Context{0, 1}.index()] +
           e[Context{1, 0}.index()] - e[Context{1, 1}.index()];
}

double chsh_s(const CorrelationSummary& summary) {
    require_all_contexts(summary);
    return chsh_s(summary.e);
}

double chsh_s_uncorrected(const CorrelationSummary& summary) {
    require_all_contexts(summary);
    return chsh_s(summary.e_uncorrected);
}

double chsh_standard_error(const CorrelationSummary& summary) {
    double var = 0.0;
    for (int c = 0; c < 4; ++c) {
        if (summary.n_coincident[c] > 0) {
            var += (1.0 - summary.e[c] * summary.e[c]) /
                   static_cast<double>(summary.n_coincident[c]);
        }
    }
    return std::sqrt(var);
}

double chsh_standard_error_uncorrected(const CorrelationSummary& summary) {
    double var = 0.0;
    for (int c = 0; c < 4; ++c) {
        const double n = static_cast<double>(summary.n_total[c]);
        // Zero-imputed products are in {-1, 0, +1}: second moment is the
        // coincidence fraction within the context.
        const double m2 = static_cast<double>(summary.n_coincident[c]) / n;
        const double m1 = summary.e_uncorrected[c];
        var += (m2 - m1 * m1) / n;
    }
    return std::sqrt(var);
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::classical: return "classical";
        case Regime::quantum: return "quantum";
        case Regime::superquantum: return "superquantum";
    }
    return "?";
}

Regime classify_regime(double s) {
    constexpr double kTol = 1e-9;
    const double a = std::abs(s);
    if (!(a <= 4.0 + kTol)) throw DataError("non-physical correlator input");
    if (a <= 2.0) return Regime::classical;
    if (a <= kTsirelsonBound) return Regime::quantum;
    return Regime::superquantum;
}

}  // namespace tara

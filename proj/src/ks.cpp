#include "tara/ks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tara {

double ks_uniform(std::span<const double> pvalues) {
    if (pvalues.empty()) throw std::invalid_argument("ks_uniform: empty sample");
    std::vector<double> sorted(pvalues.begin(), pvalues.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - sorted[i];
        const double lo = sorted[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    // Both CDFs are piecewise constant between merged sample points, so the
    // sup is attained just after one of them; walk the merged support once.
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < sa.size() && ib < sb.size()) {
        const double v = std::min(sa[ia], sb[ib]);
        while (ia < sa.size() && sa[ia] == v) ++ia;
        while (ib < sb.size() && sb[ib] == v) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    return d;
}

double ks_critical_value(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
    return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

double ks_threshold_one_sample(std::int64_t n, double alpha) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return ks_critical_value(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_threshold(std::int64_t n, std::int64_t m, double alpha) {
    if (n < 1 || m < 1) throw std::invalid_argument("sample sizes must be >= 1");
    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    return ks_critical_value(alpha) * std::sqrt((dn + dm) / (dn * dm));
}

}  // namespace tara

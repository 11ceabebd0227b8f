#include "nabfs/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nabfs/errors.hpp"

namespace nabfs {

namespace {

// Doubled mid-ranks of |values| (ascending), so ties stay in exact integer
// arithmetic. values must be nonzero.
std::vector<long long> doubled_midranks(const std::vector<double>& magnitudes,
                                        std::vector<std::size_t>& order) {
    const std::size_t m = magnitudes.size();
    order.resize(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return magnitudes[a] < magnitudes[b];
    });
    std::vector<long long> rank2(m);
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j < m && magnitudes[order[j]] == magnitudes[order[i]]) ++j;
        // positions i+1..j share mid-rank (i+1 + j)/2; doubled: i + j + 1
        const long long r2 = static_cast<long long>(i + j + 1);
        for (std::size_t t = i; t < j; ++t) rank2[order[t]] = r2;
        i = j;
    }
    return rank2;
}

double normal_upper_tail(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace

WsrResult wilcoxon_one_sided(std::span<const double> diffs, int exact_max_pairs) {
    std::vector<double> magnitudes;
    std::vector<bool> positive;
    magnitudes.reserve(diffs.size());
    positive.reserve(diffs.size());
    for (double d : diffs) {
        if (!std::isfinite(d)) throw ValidationError("non-finite difference in signed-rank input");
        if (d == 0.0) continue;  // zero differences dropped
        magnitudes.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }
    const int m = static_cast<int>(magnitudes.size());
    if (m == 0) return WsrResult{0.0, 0, 1.0, WsrMethod::Degenerate};

    std::vector<std::size_t> order;
    const std::vector<long long> rank2 = doubled_midranks(magnitudes, order);

    long long t2 = 0;
    for (int i = 0; i < m; ++i) {
        if (positive[static_cast<std::size_t>(i)]) t2 += rank2[static_cast<std::size_t>(i)];
    }
    WsrResult result;
    result.t_plus = static_cast<double>(t2) / 2.0;
    result.effective_pairs = m;

    // 2^m sign assignments need m <= 62 for exact 64-bit counting.
    if (m <= exact_max_pairs && m <= 62) {
        // Exact tail of the sign-symmetric null: count subsets of the
        // doubled ranks whose sum reaches t2. Subset-sum table over all 2^m
        // assignments.
        const long long max2 = std::accumulate(rank2.begin(), rank2.end(), 0LL);
        std::vector<std::uint64_t> count(static_cast<std::size_t>(max2) + 1, 0);
        count[0] = 1;
        for (long long r : rank2) {
            for (long long s = max2; s >= r; --s) {
                count[static_cast<std::size_t>(s)] +=
                    count[static_cast<std::size_t>(s - r)];
            }
        }
        std::uint64_t at_least = 0;
        for (long long s = t2; s <= max2; ++s) {
            at_least += count[static_cast<std::size_t>(s)];
        }
        result.p_value = std::ldexp(static_cast<double>(at_least), -m);
        result.method = WsrMethod::Exact;
        return result;
    }

    // Normal approximation with tie-corrected variance and continuity
    // correction: mean m(m+1)/4, variance m(m+1)(2m+1)/24 - sum(t^3 - t)/48.
    const double md = static_cast<double>(m);
    const double mean = md * (md + 1.0) / 4.0;
    double tie_term = 0.0;
    {
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j < order.size() &&
                   magnitudes[order[j]] == magnitudes[order[i]]) {
                ++j;
            }
            const double t = static_cast<double>(j - i);
            tie_term += t * t * t - t;
            i = j;
        }
    }
    double var = md * (md + 1.0) * (2.0 * md + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
        result.p_value = result.t_plus >= mean ? 0.0 : 1.0;
    } else {
        const double z = (result.t_plus - 0.5 - mean) / std::sqrt(var);
        result.p_value = std::clamp(normal_upper_tail(z), 0.0, 1.0);
    }
    result.method = WsrMethod::NormalApprox;
    return result;
}

DecompositionReport decomposition_check(std::span<const double> diffs) {
    std::vector<double> magnitudes;
    std::vector<bool> positive;
    for (double d : diffs) {
        if (!std::isfinite(d)) throw ValidationError("non-finite difference in decomposition input");
        if (d == 0.0) throw TiesPresentError("decomposition requires nonzero differences");
        magnitudes.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }
    {
        std::vector<double> sorted = magnitudes;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw TiesPresentError("decomposition requires distinct magnitudes");
        }
    }
    const std::size_t m = magnitudes.size();

    std::vector<std::size_t> order;
    const std::vector<long long> rank2 = doubled_midranks(magnitudes, order);
    long long t2 = 0;
    long long n_pos = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (positive[i]) {
            t2 += rank2[i];
            ++n_pos;
        }
    }

    long long pn_wins = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!positive[i]) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (positive[j]) continue;
            if (magnitudes[i] > magnitudes[j]) ++pn_wins;
        }
    }

    DecompositionReport report;
    report.t_plus = static_cast<double>(t2) / 2.0;
    report.baseline = static_cast<double>(n_pos * (n_pos + 1)) / 2.0;
    report.pn_wins = pn_wins;
    report.equal = t2 == n_pos * (n_pos + 1) + 2 * pn_wins;
    return report;
}

}  // namespace nabfs

#pragma once

// Independent reference implementations used only to check the library.
// Everything here recomputes results from first principles with code paths
// deliberately different from the production ones.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nabfs/rng.hpp"

namespace oracle {

// Mid-rank of |d[i]| computed by direct counting (no sort).
inline std::vector<double> midranks_by_counting(const std::vector<double>& mags) {
    const std::size_t m = mags.size();
    std::vector<double> ranks(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t less = 0, equal = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (mags[j] < mags[i]) ++less;
            else if (mags[j] == mags[i]) ++equal;
        }
        ranks[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return ranks;
}

struct WsrOracle {
    double t_plus = 0.0;
    int effective_pairs = 0;
    double p_value = 1.0;
};

// Full 2^m sign-assignment enumeration of the one-sided signed-rank null.
inline WsrOracle wsr_enumeration(const std::vector<double>& diffs) {
    std::vector<double> mags;
    std::vector<bool> pos;
    for (double d : diffs) {
        if (d == 0.0) continue;
        mags.push_back(std::abs(d));
        pos.push_back(d > 0.0);
    }
    WsrOracle out;
    out.effective_pairs = static_cast<int>(mags.size());
    if (mags.empty()) return out;

    const std::vector<double> ranks = midranks_by_counting(mags);
    for (std::size_t i = 0; i < mags.size(); ++i) {
        if (pos[i]) out.t_plus += ranks[i];
    }
    const std::size_t m = mags.size();
    std::uint64_t at_least = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double t = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (std::uint64_t{1} << i)) t += ranks[i];
        }
        if (t >= out.t_plus) ++at_least;
    }
    out.p_value = std::ldexp(static_cast<double>(at_least),
                             -static_cast<int>(m));
    return out;
}

// Holm step-down by repeated minimum extraction and a quadratic max scan.
inline std::vector<double> holm_bruteforce(const std::vector<double>& raw) {
    const std::size_t m = raw.size();
    std::vector<std::size_t> order;
    std::vector<bool> used(m, false);
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t best = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (used[i]) continue;
            if (best == m || raw[i] < raw[best]) best = i;
        }
        used[best] = true;
        order.push_back(best);
    }
    std::vector<double> adjusted(m, 0.0);
    for (std::size_t pos = 0; pos < m; ++pos) {
        double value = 0.0;
        for (std::size_t j = 0; j <= pos; ++j) {
            value = std::max(value,
                             static_cast<double>(m - j) * raw[order[j]]);
        }
        adjusted[order[pos]] = std::min(1.0, value);
    }
    return adjusted;
}

// Unpenalized 1-D logistic maximum likelihood with intercept, by Newton
// iteration on the raw (unstandardized) scale.
inline std::pair<double, double> logistic_1d_newton(const Eigen::VectorXd& x,
                                                    const Eigen::VectorXd& y) {
    double b0 = 0.0, b1 = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        double g0 = 0.0, g1 = 0.0, h00 = 0.0, h01 = 0.0, h11 = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double mu = 1.0 / (1.0 + std::exp(-(b0 + b1 * x(i))));
            const double r = y(i) - mu;
            const double w = mu * (1.0 - mu);
            g0 += r;
            g1 += r * x(i);
            h00 += w;
            h01 += w * x(i);
            h11 += w * x(i) * x(i);
        }
        const double det = h00 * h11 - h01 * h01;
        const double d0 = (h11 * g0 - h01 * g1) / det;
        const double d1 = (h00 * g1 - h01 * g0) / det;
        b0 += d0;
        b1 += d1;
        if (std::abs(d0) < 1e-12 && std::abs(d1) < 1e-12) break;
    }
    return {b0, b1};
}

// Random no-tie, no-zero difference vector (distinct magnitudes).
inline std::vector<double> random_clean_diffs(nabfs::Rng& rng, int m) {
    std::vector<double> diffs;
    std::vector<double> mags;
    while (static_cast<int>(diffs.size()) < m) {
        const double v = rng.next_normal();
        if (v == 0.0) continue;
        const double a = std::abs(v);
        if (std::find(mags.begin(), mags.end(), a) != mags.end()) continue;
        mags.push_back(a);
        diffs.push_back(v);
    }
    return diffs;
}

}  // namespace oracle

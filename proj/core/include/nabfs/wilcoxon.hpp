#pragma once

#include <Eigen/Dense>
#include <span>

#include "nabfs/errors.hpp"

namespace nabfs {

enum class WsrMethod { Exact, NormalApprox, Degenerate };

struct WsrResult {
    double t_plus = 0.0;      // mid-ranks make half-integers possible
    int effective_pairs = 0;  // nonzero differences
    double p_value = 1.0;     // one-sided, P(T+ >= t_plus) under the null
    WsrMethod method = WsrMethod::Degenerate;
};

// One-sided Wilcoxon signed-rank test of median(diffs) > 0.
//
// Exact zeros are dropped; |diffs| are ranked ascending with mid-ranks for
// ties; t_plus sums the ranks of positive differences. The null tail is
// enumerated exactly over all 2^m sign assignments when the effective pair
// count m is at most exact_max_pairs (and at most 62), otherwise a normal
// approximation with tie-corrected variance and continuity correction 0.5 is
// used. Zero effective pairs yield method = Degenerate with p = 1.
WsrResult wilcoxon_one_sided(std::span<const double> diffs,
                             int exact_max_pairs = 16);

inline WsrResult wilcoxon_one_sided(const Eigen::VectorXd& diffs,
                                    int exact_max_pairs = 16) {
    return wilcoxon_one_sided(
        std::span<const double>(diffs.data(), static_cast<std::size_t>(diffs.size())),
        exact_max_pairs);
}

// Both sides of the rank-sum identity
//   T+ = p(p+1)/2 + #{(i, j) in P x N : |D_i| > |D_j|}
// where P/N are the positive/negative index sets. Requires all differences
// nonzero with distinct magnitudes; throws TiesPresentError otherwise.
struct DecompositionReport {
    double t_plus = 0.0;          // rank-sum route
    double baseline = 0.0;        // p(p+1)/2
    long long pn_wins = 0;        // positive-over-negative comparisons won
    bool equal = false;
};

DecompositionReport decomposition_check(std::span<const double> diffs);

}  // namespace nabfs

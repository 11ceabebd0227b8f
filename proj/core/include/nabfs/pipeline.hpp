#pragma once

#include "nabfs/config.hpp"
#include "nabfs/dataset.hpp"
#include "nabfs/report.hpp"

namespace nabfs {

// Full selection run: augment with noise probes, bootstrap model
// importances, test each feature's paired differences against the
// replicate-wise noise maximum with a one-sided signed-rank test, adjust
// p-values by Holm step-down, and keep features with adjusted p < alpha.
// Deterministic per (data, config) for any worker count.
SelectionReport nabfs_select(const Dataset& data, const NabfsConfig& config,
                             int workers = 1);

// Baseline heuristic: one fit on the augmented data, keep every feature
// whose importance strictly exceeds the strongest noise probe. No bootstrap,
// no test; p-value fields are absent in the report.
SelectionReport naive_threshold_select(const Dataset& data,
                                       const NabfsConfig& config,
                                       int workers = 1);

}  // namespace nabfs

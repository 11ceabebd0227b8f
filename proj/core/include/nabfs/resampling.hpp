#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nabfs/importance.hpp"
#include "nabfs/learners.hpp"
#include "nabfs/noise.hpp"

namespace nabfs {

// Replicate seeds derived from the master seed by a fixed counter scheme;
// parallel and sequential execution agree bit-for-bit.
struct BootstrapPlan {
    int replicate_count = 0;
    Eigen::Index sample_size = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds;  // attempt-0 draw seed per replicate

    static BootstrapPlan make(std::uint64_t master_seed, int replicate_count,
                              Eigen::Index sample_size);

    // Seed for redrawing replicate i after a degenerate sample.
    std::uint64_t redraw_seed(int replicate, int attempt) const;
    // Seed for the learner fitted on replicate i.
    std::uint64_t learner_seed(int replicate) const;
};

// n indices i.i.d. uniform on {0, ..., n-1} with replacement.
std::vector<Eigen::Index> bootstrap_indices(Eigen::Index n, std::uint64_t seed);

// Fit one model per replicate and record importances. Classification
// replicates that come up single-class are redrawn with the next derived
// seed, up to 10 attempts, then DegenerateReplicateError. The row count
// always equals the plan's replicate_count.
ImportanceMatrix replicate_importances(const AugmentedDataset& aug,
                                       const LearnerSpec& spec,
                                       const BootstrapPlan& plan,
                                       int workers = 1);

// Replicate-wise maximum over the noise block.
NoiseMaxSeries noise_max(const ImportanceMatrix& imp);

// diffs[i] = real importance of feature j in replicate i minus the noise
// maximum of replicate i.
DifferenceSeries paired_differences(const ImportanceMatrix& imp,
                                    Eigen::Index feature);

}  // namespace nabfs

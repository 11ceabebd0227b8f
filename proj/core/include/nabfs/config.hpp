#pragma once

#include <cstdint>

#include "nabfs/learners.hpp"

namespace nabfs {

// All hyperparameters of one selection run.
struct NabfsConfig {
    int noise_count = 3;        // synthetic noise probes appended (l)
    int bootstrap_count = 100;  // bootstrap replicates (b)
    double alpha = 0.05;        // family-wise error level
    double noise_mean = 0.0;
    double noise_sd = 0.1;
    LearnerSpec learner = LogisticSpec{};
    std::uint64_t seed = 0;
    // Effective-pair threshold below which the signed-rank null is
    // enumerated exactly instead of normal-approximated.
    int exact_wsr_max_pairs = 16;

    bool operator==(const NabfsConfig&) const = default;
};

// Throws ValidationError on l < 1, b < 2, alpha outside (0,1), noise_sd <= 0,
// exact_wsr_max_pairs < 1, or bad learner parameters.
void validate_config(const NabfsConfig& config);

}  // namespace nabfs

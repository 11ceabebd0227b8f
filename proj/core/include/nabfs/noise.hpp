#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "nabfs/dataset.hpp"

namespace nabfs {

// A dataset with synthetic noise probes appended. The real columns are the
// base dataset's, bit-identical.
struct AugmentedDataset {
    Dataset base;
    Eigen::MatrixXd noise;  // n x l
    std::vector<std::string> noise_names;

    Eigen::Index n_rows() const { return base.n_rows(); }
    Eigen::Index n_real() const { return base.n_features(); }
    Eigen::Index n_noise() const { return noise.cols(); }
    Eigen::Index total_columns() const { return n_real() + n_noise(); }

    // n x (p + l) design matrix, real columns first.
    Eigen::MatrixXd combined() const;
};

// Append noise_count Gaussian(mean, sd^2) columns. Deterministic per
// (seed, n, noise_count); columns are drawn one at a time, so a larger
// noise_count extends the same draw (the first columns are identical).
// Synthetic names are "noise_1", "noise_2", ... suffixed with '_' until
// distinct from every real name; NameCollisionError if that fails.
AugmentedDataset augment(const Dataset& data, int noise_count, double mean,
                         double sd, std::uint64_t seed);

}  // namespace nabfs

#pragma once

#include <Eigen/Dense>

namespace nabfs {

// Bootstrap importance scores: one row per replicate, real features and
// noise probes in separate blocks.
struct ImportanceMatrix {
    Eigen::MatrixXd real;   // b x p
    Eigen::MatrixXd noise;  // b x l

    Eigen::Index replicate_count() const { return real.rows(); }
    Eigen::Index n_features() const { return real.cols(); }
    Eigen::Index n_noise() const { return noise.cols(); }
};

// Replicate-wise paired differences for one feature: importance minus the
// maximum noise importance in the same replicate.
struct DifferenceSeries {
    Eigen::Index feature_index = 0;
    Eigen::VectorXd diffs;  // length b
};

// Replicate-wise maximum over the noise block.
using NoiseMaxSeries = Eigen::VectorXd;

}  // namespace nabfs

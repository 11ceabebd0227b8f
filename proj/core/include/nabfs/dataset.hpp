#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nabfs/errors.hpp"

namespace nabfs {

enum class TaskKind { BinaryClassification, Regression };

std::string to_string(TaskKind task);

// Column-oriented numeric design matrix with named features and a response.
// Immutable after validation; safe to share across workers.
struct Dataset {
    std::vector<std::string> feature_names;
    Eigen::MatrixXd features;  // n x p, column-major
    Eigen::VectorXd response;  // length n
    TaskKind task = TaskKind::BinaryClassification;

    Eigen::Index n_rows() const { return features.rows(); }
    Eigen::Index n_features() const { return features.cols(); }
};

// Throws when any Dataset invariant fails:
//   NonFiniteValueError      NaN/Inf entry (response reported as column p)
//   DuplicateFeatureNameError repeated feature name
//   DegenerateResponseError  single-class or non-{0,1} classification
//                            response, zero-variance regression response
//   ValidationError          shape violations (n < 2, p < 1, length mismatch)
void check_dataset(const Dataset& data);

// check_dataset, returning the dataset unchanged when all invariants hold.
Dataset validate_dataset(Dataset data);

}  // namespace nabfs

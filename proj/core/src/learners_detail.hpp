#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "nabfs/learners.hpp"

// Internal fitting entry points shared between the learner translation units.
namespace nabfs::detail {

void standardize_columns(const Eigen::MatrixXd& X, Eigen::MatrixXd& Xs,
                         Eigen::VectorXd& mean, Eigen::VectorXd& scale);

double sigmoid(double x);

LinearModel fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const LogisticSpec& spec);

LinearModel fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const LinearSpec& spec);

ForestModel fit_forest(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       TaskKind task, const ForestSpec& spec,
                       std::uint64_t seed, int workers);

}  // namespace nabfs::detail

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nabfs/dataset.hpp"

namespace nabfs {

// Ridge-penalized logistic regression fitted by iteratively reweighted least
// squares. Classification only; importance is |coefficient| on standardized
// columns.
struct LogisticSpec {
    double l2_penalty = 1e-4;
    int max_iter = 100;
    double tol = 1e-8;
    bool operator==(const LogisticSpec&) const = default;
};

// Ridge-penalized linear least squares, solved in closed form. Regression
// only; importance is |coefficient| on standardized columns. max_iter/tol
// are kept for interface parity with the logistic learner and are unused.
struct LinearSpec {
    double l2_penalty = 1e-4;
    int max_iter = 100;
    double tol = 1e-8;
    bool operator==(const LinearSpec&) const = default;
};

// Greedy CART ensemble over random per-split feature subsets. Importance is
// total split gain (Gini decrease / variance reduction) per feature,
// normalized to sum 1. Rows are not resampled inside the forest; the
// selection pipeline already fits each forest on a bootstrap replicate.
struct ForestSpec {
    int n_trees = 100;
    int max_depth = 6;
    int min_leaf = 5;
    double features_per_split = 0.0;  // fraction in (0,1]; 0 selects sqrt(m)/m
    bool operator==(const ForestSpec&) const = default;
};

using LearnerSpec = std::variant<LogisticSpec, LinearSpec, ForestSpec>;

// "logistic" | "linear" | "forest"
std::string learner_name(const LearnerSpec& spec);

// Parameter ranges plus task compatibility (logistic <-> classification,
// linear <-> regression, forest <-> both). Throws ValidationError.
void validate_learner(const LearnerSpec& spec, TaskKind task);

// Fitted linear-family model. Coefficients live in standardized coordinates;
// the stored column statistics map back to the original scale.
struct LinearModel {
    Eigen::VectorXd coefficients;  // per standardized column
    double intercept = 0.0;
    Eigen::VectorXd column_mean;
    Eigen::VectorXd column_scale;  // 1.0 for constant columns
    bool logistic = false;
    int iterations = 0;

    Eigen::VectorXd raw_coefficients() const;
    double raw_intercept() const;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;  // leaf prediction
};

struct ForestModel {
    std::vector<std::vector<TreeNode>> trees;
    Eigen::VectorXd importances;  // normalized split-gain totals
    Eigen::Index n_columns = 0;
    TaskKind task = TaskKind::BinaryClassification;
};

// Any fitted learner; predicts scores for new rows.
class FittedModel {
public:
    explicit FittedModel(LinearModel m) : model_(std::move(m)) {}
    explicit FittedModel(ForestModel m) : model_(std::move(m)) {}

    // Classification returns probabilities in [0, 1]; regression returns
    // real predictions. Throws DimensionMismatchError when X has the wrong
    // column count.
    Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

    // One nonnegative importance per training column.
    Eigen::VectorXd importances() const;

    Eigen::Index n_columns() const;
    bool is_linear_family() const {
        return std::holds_alternative<LinearModel>(model_);
    }
    const LinearModel& linear() const { return std::get<LinearModel>(model_); }
    const ForestModel& forest() const { return std::get<ForestModel>(model_); }

private:
    std::variant<LinearModel, ForestModel> model_;
};

// Fit the requested learner. Deterministic given (X, y, spec, seed); forests
// may build trees in parallel with results identical to sequential order.
FittedModel fit_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      TaskKind task, const LearnerSpec& spec,
                      std::uint64_t seed, int workers = 1);

// One nonnegative importance per column of X (real features first, noise
// columns last, in the order the caller assembled them).
Eigen::VectorXd fit_importances(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& y, TaskKind task,
                                const LearnerSpec& spec, std::uint64_t seed,
                                int workers = 1);

// Diagnostics for the logistic objective: mean penalized negative
// log-likelihood and its gradient (coefficients first, intercept last) at an
// arbitrary point in standardized coordinates.
double logistic_penalized_nll(const Eigen::MatrixXd& Xs,
                              const Eigen::VectorXd& y,
                              const Eigen::VectorXd& coef, double intercept,
                              double l2_penalty);
Eigen::VectorXd logistic_penalized_gradient(const Eigen::MatrixXd& Xs,
                                            const Eigen::VectorXd& y,
                                            const Eigen::VectorXd& coef,
                                            double intercept,
                                            double l2_penalty);

}  // namespace nabfs

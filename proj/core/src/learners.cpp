#include "nabfs/learners.hpp"

#include <cmath>

#include "learners_detail.hpp"

namespace nabfs {

std::string learner_name(const LearnerSpec& spec) {
    if (std::holds_alternative<LogisticSpec>(spec)) return "logistic";
    if (std::holds_alternative<LinearSpec>(spec)) return "linear";
    return "forest";
}

void validate_learner(const LearnerSpec& spec, TaskKind task) {
    if (const auto* logistic = std::get_if<LogisticSpec>(&spec)) {
        if (task != TaskKind::BinaryClassification) {
            throw ValidationError("logistic learner requires a classification task");
        }
        if (logistic->l2_penalty < 0.0) throw ValidationError("l2_penalty must be >= 0");
        if (logistic->max_iter < 1) throw ValidationError("max_iter must be >= 1");
        if (!(logistic->tol > 0.0)) throw ValidationError("tol must be > 0");
    } else if (const auto* linear = std::get_if<LinearSpec>(&spec)) {
        if (task != TaskKind::Regression) {
            throw ValidationError("linear learner requires a regression task");
        }
        if (linear->l2_penalty < 0.0) throw ValidationError("l2_penalty must be >= 0");
        if (linear->max_iter < 1) throw ValidationError("max_iter must be >= 1");
        if (!(linear->tol > 0.0)) throw ValidationError("tol must be > 0");
    } else {
        const auto& forest = std::get<ForestSpec>(spec);
        if (forest.n_trees < 1) throw ValidationError("n_trees must be >= 1");
        if (forest.max_depth < 0) throw ValidationError("max_depth must be >= 0");
        if (forest.min_leaf < 1) throw ValidationError("min_leaf must be >= 1");
        if (forest.features_per_split < 0.0 || forest.features_per_split > 1.0) {
            throw ValidationError("features_per_split must lie in (0, 1] (0 = auto)");
        }
    }
}

Eigen::VectorXd FittedModel::predict(const Eigen::MatrixXd& X) const {
    if (X.cols() != n_columns()) {
        throw DimensionMismatchError(
            "predict called with " + std::to_string(X.cols()) +
            " columns; model was trained on " + std::to_string(n_columns()));
    }
    if (const auto* lin = std::get_if<LinearModel>(&model_)) {
        Eigen::VectorXd eta(X.rows());
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            double acc = lin->intercept;
            for (Eigen::Index j = 0; j < X.cols(); ++j) {
                acc += lin->coefficients(j) *
                       (X(i, j) - lin->column_mean(j)) / lin->column_scale(j);
            }
            eta(i) = acc;
        }
        if (!lin->logistic) return eta;
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            eta(i) = detail::sigmoid(eta(i));
        }
        return eta;
    }
    const auto& forest = std::get<ForestModel>(model_);
    Eigen::VectorXd pred = Eigen::VectorXd::Zero(X.rows());
    for (const auto& tree : forest.trees) {
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            std::int32_t node = 0;
            while (tree[static_cast<std::size_t>(node)].feature >= 0) {
                const auto& nd = tree[static_cast<std::size_t>(node)];
                node = X(i, nd.feature) <= nd.threshold ? nd.left : nd.right;
            }
            pred(i) += tree[static_cast<std::size_t>(node)].value;
        }
    }
    pred /= static_cast<double>(forest.trees.size());
    return pred;
}

Eigen::VectorXd FittedModel::importances() const {
    if (const auto* lin = std::get_if<LinearModel>(&model_)) {
        return lin->coefficients.cwiseAbs();
    }
    return std::get<ForestModel>(model_).importances;
}

Eigen::Index FittedModel::n_columns() const {
    if (const auto* lin = std::get_if<LinearModel>(&model_)) {
        return lin->coefficients.size();
    }
    return std::get<ForestModel>(model_).n_columns;
}

FittedModel fit_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      TaskKind task, const LearnerSpec& spec,
                      std::uint64_t seed, int workers) {
    validate_learner(spec, task);
    if (X.rows() != y.size()) {
        throw DimensionMismatchError("design matrix rows do not match response length");
    }
    if (const auto* logistic = std::get_if<LogisticSpec>(&spec)) {
        return FittedModel(detail::fit_logistic(X, y, *logistic));
    }
    if (const auto* linear = std::get_if<LinearSpec>(&spec)) {
        return FittedModel(detail::fit_linear(X, y, *linear));
    }
    return FittedModel(
        detail::fit_forest(X, y, task, std::get<ForestSpec>(spec), seed, workers));
}

Eigen::VectorXd fit_importances(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& y, TaskKind task,
                                const LearnerSpec& spec, std::uint64_t seed,
                                int workers) {
    return fit_model(X, y, task, spec, seed, workers).importances();
}

}  // namespace nabfs

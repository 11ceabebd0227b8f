#include "nabfs/dataset.hpp"

#include <cmath>
#include <unordered_set>

namespace nabfs {

std::string to_string(TaskKind task) {
    return task == TaskKind::BinaryClassification ? "binary_classification"
                                                  : "regression";
}

void check_dataset(const Dataset& data) {
    const Eigen::Index n = data.features.rows();
    const Eigen::Index p = data.features.cols();
    if (n < 2) throw ValidationError("dataset needs at least 2 rows, got " + std::to_string(n));
    if (p < 1) throw ValidationError("dataset needs at least 1 feature column");
    if (data.response.size() != n) {
        throw ValidationError("response length " + std::to_string(data.response.size()) +
                              " does not match row count " + std::to_string(n));
    }
    if (static_cast<Eigen::Index>(data.feature_names.size()) != p) {
        throw ValidationError("feature_names has " + std::to_string(data.feature_names.size()) +
                              " entries for " + std::to_string(p) + " columns");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : data.feature_names) {
        if (!seen.insert(name).second) throw DuplicateFeatureNameError(name);
    }
    for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!std::isfinite(data.features(i, j))) {
                throw NonFiniteValueError(static_cast<std::size_t>(i),
                                          static_cast<std::size_t>(j));
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(data.response(i))) {
            // the response is reported as column p
            throw NonFiniteValueError(static_cast<std::size_t>(i),
                                      static_cast<std::size_t>(p));
        }
    }
    if (data.task == TaskKind::BinaryClassification) {
        bool has_zero = false;
        bool has_one = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double y = data.response(i);
            if (y == 0.0) {
                has_zero = true;
            } else if (y == 1.0) {
                has_one = true;
            } else {
                throw DegenerateResponseError(
                    "classification response at row " + std::to_string(i) +
                    " is " + std::to_string(y) + ", expected 0 or 1");
            }
        }
        if (!has_zero || !has_one) {
            throw DegenerateResponseError("classification response contains a single class");
        }
    } else {
        const double mean = data.response.mean();
        if ((data.response.array() == data.response(0)).all() ||
            (data.response.array() - mean).abs().maxCoeff() == 0.0) {
            throw DegenerateResponseError("regression response has zero variance");
        }
    }
}

Dataset validate_dataset(Dataset data) {
    check_dataset(data);
    return data;
}

}  // namespace nabfs

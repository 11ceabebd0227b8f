#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "learners_detail.hpp"
#include "nabfs/parallel.hpp"
#include "nabfs/rng.hpp"

namespace nabfs::detail {

namespace {

struct SplitResult {
    bool found = false;
    Eigen::Index feature = -1;
    double threshold = 0.0;
    double gain = 0.0;  // total impurity decrease (not averaged)
    std::vector<Eigen::Index> left;
    std::vector<Eigen::Index> right;
};

double node_impurity_total(const Eigen::VectorXd& y,
                           const std::vector<Eigen::Index>& idx,
                           bool classification) {
    const double n = static_cast<double>(idx.size());
    if (idx.empty()) return 0.0;
    double sum = 0.0;
    for (Eigen::Index i : idx) sum += y(i);
    if (classification) {
        const double p1 = sum / n;
        return n * 2.0 * p1 * (1.0 - p1);  // n * gini for two classes
    }
    double sse = 0.0;
    const double mean = sum / n;
    for (Eigen::Index i : idx) {
        const double d = y(i) - mean;
        sse += d * d;
    }
    return sse;
}

// Exhaustive threshold scan on one feature. Gains are computed as
// total-impurity decreases so they add up across the tree.
void scan_feature(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  const std::vector<Eigen::Index>& idx, Eigen::Index feature,
                  bool classification, int min_leaf, double parent_total,
                  SplitResult& best) {
    const std::size_t n = idx.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return X(idx[a], feature) < X(idx[b], feature);
    });

    // prefix sums of y and y^2 in sorted order
    double left_sum = 0.0, left_sq = 0.0;
    double total_sum = 0.0, total_sq = 0.0;
    for (Eigen::Index i : idx) {
        total_sum += y(i);
        total_sq += y(i) * y(i);
    }

    for (std::size_t cut = 1; cut < n; ++cut) {
        const double yv = y(idx[order[cut - 1]]);
        left_sum += yv;
        left_sq += yv * yv;
        const double lo = X(idx[order[cut - 1]], feature);
        const double hi = X(idx[order[cut]], feature);
        if (lo == hi) continue;  // can only cut between distinct values
        const auto n_left = static_cast<double>(cut);
        const auto n_right = static_cast<double>(n - cut);
        if (n_left < min_leaf || n_right < min_leaf) continue;

        double child_total;
        if (classification) {
            const double pl = left_sum / n_left;
            const double pr = (total_sum - left_sum) / n_right;
            child_total = n_left * 2.0 * pl * (1.0 - pl) +
                          n_right * 2.0 * pr * (1.0 - pr);
        } else {
            const double sse_l = left_sq - left_sum * left_sum / n_left;
            const double right_sum = total_sum - left_sum;
            const double sse_r =
                (total_sq - left_sq) - right_sum * right_sum / n_right;
            child_total = sse_l + sse_r;
        }
        const double gain = parent_total - child_total;
        if (gain > best.gain) {
            best.found = true;
            best.feature = feature;
            best.threshold = 0.5 * (lo + hi);
            best.gain = gain;
            best.left.clear();
            best.right.clear();
            for (std::size_t t = 0; t < n; ++t) {
                (t < cut ? best.left : best.right).push_back(idx[order[t]]);
            }
        }
    }
}

double leaf_value(const Eigen::VectorXd& y, const std::vector<Eigen::Index>& idx) {
    double sum = 0.0;
    for (Eigen::Index i : idx) sum += y(i);
    return sum / static_cast<double>(idx.size());
}

struct BuildFrame {
    std::vector<Eigen::Index> idx;
    int depth = 0;
    std::int32_t node = 0;
};

void build_tree(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                bool classification, const ForestSpec& spec, int mtry,
                Rng& rng, std::vector<TreeNode>& nodes,
                Eigen::VectorXd& gain_accum) {
    const Eigen::Index m = X.cols();
    std::vector<Eigen::Index> all(static_cast<std::size_t>(X.rows()));
    std::iota(all.begin(), all.end(), Eigen::Index{0});

    nodes.clear();
    nodes.push_back(TreeNode{});
    std::vector<BuildFrame> stack;
    stack.push_back(BuildFrame{std::move(all), 0, 0});

    std::vector<Eigen::Index> columns(static_cast<std::size_t>(m));
    std::iota(columns.begin(), columns.end(), Eigen::Index{0});

    while (!stack.empty()) {
        BuildFrame frame = std::move(stack.back());
        stack.pop_back();
        TreeNode& node = nodes[static_cast<std::size_t>(frame.node)];
        node.value = leaf_value(y, frame.idx);

        const double parent_total =
            node_impurity_total(y, frame.idx, classification);
        const bool can_split =
            frame.depth < spec.max_depth &&
            static_cast<int>(frame.idx.size()) >= 2 * spec.min_leaf &&
            parent_total > 0.0;
        if (!can_split) continue;

        SplitResult best;
        if (mtry >= m) {
            // all features considered; no subset draw, so the build consumes
            // no randomness and column permutations commute with fitting
            for (Eigen::Index f = 0; f < m; ++f) {
                scan_feature(X, y, frame.idx, f, classification, spec.min_leaf,
                             parent_total, best);
            }
        } else {
            // partial Fisher-Yates draw of mtry distinct columns, then scan
            // in ascending index order for a scheduling-free tie-break
            for (int t = 0; t < mtry; ++t) {
                const auto swap_with = static_cast<std::size_t>(
                    t + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(m - t))));
                std::swap(columns[static_cast<std::size_t>(t)], columns[swap_with]);
            }
            std::vector<Eigen::Index> chosen(
                columns.begin(), columns.begin() + mtry);
            std::sort(chosen.begin(), chosen.end());
            for (Eigen::Index f : chosen) {
                scan_feature(X, y, frame.idx, f, classification, spec.min_leaf,
                             parent_total, best);
            }
        }
        if (!best.found) continue;

        node.feature = static_cast<std::int32_t>(best.feature);
        node.threshold = best.threshold;
        gain_accum(best.feature) += best.gain;

        const auto left_id = static_cast<std::int32_t>(nodes.size());
        nodes.push_back(TreeNode{});
        const auto right_id = static_cast<std::int32_t>(nodes.size());
        nodes.push_back(TreeNode{});
        nodes[static_cast<std::size_t>(frame.node)].left = left_id;
        nodes[static_cast<std::size_t>(frame.node)].right = right_id;

        stack.push_back(BuildFrame{std::move(best.right), frame.depth + 1, right_id});
        stack.push_back(BuildFrame{std::move(best.left), frame.depth + 1, left_id});
    }
}

}  // namespace

ForestModel fit_forest(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       TaskKind task, const ForestSpec& spec,
                       std::uint64_t seed, int workers) {
    const Eigen::Index m = X.cols();
    const bool classification = task == TaskKind::BinaryClassification;

    int mtry;
    if (spec.features_per_split <= 0.0) {
        mtry = static_cast<int>(
            std::lround(std::sqrt(static_cast<double>(m))));
    } else {
        mtry = static_cast<int>(
            std::ceil(spec.features_per_split * static_cast<double>(m)));
    }
    mtry = std::clamp(mtry, 1, static_cast<int>(m));

    ForestModel model;
    model.task = task;
    model.n_columns = m;
    model.trees.resize(static_cast<std::size_t>(spec.n_trees));
    std::vector<Eigen::VectorXd> gains(
        static_cast<std::size_t>(spec.n_trees), Eigen::VectorXd::Zero(m));

    parallel_for(static_cast<std::size_t>(spec.n_trees), workers,
                 [&](std::size_t t) {
                     Rng rng(substream_seed(seed, SeedStream::ForestTree, t));
                     build_tree(X, y, classification, spec, mtry, rng,
                                model.trees[t], gains[t]);
                 });

    Eigen::VectorXd total = Eigen::VectorXd::Zero(m);
    for (const auto& g : gains) total += g;
    const double sum = total.sum();
    // degenerate forests (no splits anywhere) keep all-zero importances
    model.importances = sum > 0.0 ? Eigen::VectorXd(total / sum) : total;
    return model;
}

}  // namespace nabfs::detail

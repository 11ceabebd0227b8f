#include "nabfs/simbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "nabfs/parallel.hpp"
#include "nabfs/pipeline.hpp"
#include "nabfs/rng.hpp"
#include "nabfs/wilcoxon.hpp"

namespace nabfs {

void validate_sim_config(const SimConfig& sim) {
    if (sim.n < 2) throw ValidationError("simulation n must be >= 2");
    if (sim.p < 1) throw ValidationError("simulation p must be >= 1");
    if (sim.k < 0 || sim.k > sim.p) {
        throw ValidationError("signal count k must lie in [0, p]");
    }
    if (!(sim.rho >= 0.0 && sim.rho <= 1.0)) {
        throw ValidationError("rho must lie in [0, 1]");
    }
    if (!(sim.coef_low < sim.coef_high)) {
        throw ValidationError("coef_low must be < coef_high");
    }
    if (sim.replicates < 1) throw ValidationError("replicates must be >= 1");
}

namespace {

GeneratedDataset generate_impl(const SimConfig& sim, std::uint64_t seed,
                               const Eigen::VectorXd* fixed_beta) {
    validate_sim_config(sim);
    Rng rng(seed);

    GeneratedDataset out;
    out.beta = Eigen::VectorXd::Zero(sim.p);
    if (fixed_beta != nullptr) {
        if (fixed_beta->size() != sim.p) {
            throw DimensionMismatchError("fixed beta length does not match p");
        }
        out.beta = *fixed_beta;
    } else {
        for (int j = 0; j < sim.k; ++j) {
            out.beta(j) = rng.next_uniform(sim.coef_low, sim.coef_high);
        }
    }
    out.true_support.assign(static_cast<std::size_t>(sim.p), false);
    for (int j = 0; j < sim.k; ++j) out.true_support[static_cast<std::size_t>(j)] = true;

    const double load_shared = std::sqrt(sim.rho);
    const double load_own = std::sqrt(1.0 - sim.rho);
    Eigen::MatrixXd X(sim.n, sim.p);
    for (Eigen::Index i = 0; i < sim.n; ++i) {
        const double shared = rng.next_normal();
        for (int j = 0; j < sim.p; ++j) {
            X(i, j) = load_own * rng.next_normal() + load_shared * shared;
        }
    }

    const Eigen::VectorXd eta = X * out.beta;
    Eigen::VectorXd y(sim.n);
    bool two_classes = false;
    for (int attempt = 0; attempt < 10 && !two_classes; ++attempt) {
        for (Eigen::Index i = 0; i < sim.n; ++i) {
            const double prob = 1.0 / (1.0 + std::exp(-eta(i)));
            y(i) = rng.next_unit() < prob ? 1.0 : 0.0;
        }
        two_classes = y.minCoeff() != y.maxCoeff();
    }
    if (!two_classes) {
        throw DegenerateResponseError("simulated response stayed single-class after 10 redraws");
    }

    out.data.features = std::move(X);
    out.data.response = std::move(y);
    out.data.task = TaskKind::BinaryClassification;
    out.data.feature_names.reserve(static_cast<std::size_t>(sim.p));
    for (int j = 0; j < sim.p; ++j) {
        out.data.feature_names.push_back("f" + std::to_string(j + 1));
    }
    return out;
}

}  // namespace

GeneratedDataset generate_dataset(const SimConfig& sim, std::uint64_t seed) {
    return generate_impl(sim, seed, nullptr);
}

GeneratedDataset generate_dataset(const SimConfig& sim, std::uint64_t seed,
                                  const Eigen::VectorXd& beta) {
    return generate_impl(sim, seed, &beta);
}

ReplicateMetrics selection_metrics(const std::vector<bool>& selected,
                                   const std::vector<bool>& truth) {
    if (selected.size() != truth.size()) {
        throw DimensionMismatchError("selection and truth masks differ in length");
    }
    const auto p = selected.size();
    std::size_t k = 0, hits = 0, false_pos = 0, union_size = 0, n_selected = 0;
    for (std::size_t j = 0; j < p; ++j) {
        if (truth[j]) ++k;
        if (selected[j]) ++n_selected;
        if (selected[j] && truth[j]) ++hits;
        if (selected[j] && !truth[j]) ++false_pos;
        if (selected[j] || truth[j]) ++union_size;
    }
    ReplicateMetrics m;
    m.power = k > 0 ? static_cast<double>(hits) / static_cast<double>(k) : 0.0;
    m.type1 = p > k ? static_cast<double>(false_pos) / static_cast<double>(p - k) : 0.0;
    m.jaccard = union_size > 0
                    ? static_cast<double>(hits) / static_cast<double>(union_size)
                    : 1.0;
    m.selected_count = static_cast<int>(n_selected);
    return m;
}

namespace {

double sample_se(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace

MetricSummary monte_carlo_run(const SimConfig& sim, const NabfsConfig& nabfs,
                              int workers) {
    validate_sim_config(sim);
    validate_config(nabfs);

    Eigen::VectorXd shared_beta;
    const bool fixed_beta = !sim.redraw_coefficients;
    if (fixed_beta) {
        Rng rng(substream_seed(sim.master_seed, SeedStream::SimBeta));
        shared_beta = Eigen::VectorXd::Zero(sim.p);
        for (int j = 0; j < sim.k; ++j) {
            shared_beta(j) = rng.next_uniform(sim.coef_low, sim.coef_high);
        }
    }

    const auto reps = static_cast<std::size_t>(sim.replicates);
    std::vector<ReplicateMetrics> metrics(reps);
    std::vector<bool> ok(reps, false);
    std::vector<std::string> failures(reps);

    parallel_for(reps, workers, [&](std::size_t r) {
        try {
            const std::uint64_t data_seed =
                substream_seed(sim.master_seed, SeedStream::SimData, r);
            const GeneratedDataset gen =
                fixed_beta ? generate_dataset(sim, data_seed, shared_beta)
                           : generate_dataset(sim, data_seed);
            NabfsConfig run = nabfs;
            run.seed = substream_seed(sim.master_seed, SeedStream::SimSelect, r);
            const SelectionReport report =
                nabfs_select(gen.data, run, /*workers=*/1);
            std::vector<bool> selected;
            selected.reserve(report.features.size());
            for (const auto& row : report.features) selected.push_back(row.selected);
            metrics[r] = selection_metrics(selected, gen.true_support);
            ok[r] = true;
        } catch (const Error& err) {
            failures[r] = err.what();
        }
    });

    MetricSummary summary;
    std::vector<double> powers, type1s, jaccards;
    for (std::size_t r = 0; r < reps; ++r) {
        if (!ok[r]) {
            ++summary.failed_replicates;
            continue;
        }
        summary.per_replicate.push_back(metrics[r]);
        powers.push_back(metrics[r].power);
        type1s.push_back(metrics[r].type1);
        jaccards.push_back(metrics[r].jaccard);
        summary.power += metrics[r].power;
        summary.type1 += metrics[r].type1;
        summary.jaccard += metrics[r].jaccard;
        summary.selected_count += metrics[r].selected_count;
    }
    if (summary.failed_replicates * 5 > sim.replicates) {
        std::string first;
        for (std::size_t r = 0; r < reps; ++r) {
            if (!ok[r]) {
                first = failures[r];
                break;
            }
        }
        throw Error("more than 20% of Monte Carlo replicates failed (" +
                    std::to_string(summary.failed_replicates) + "/" +
                    std::to_string(sim.replicates) + "); first failure: " + first);
    }
    const auto succeeded = static_cast<double>(summary.per_replicate.size());
    summary.power /= succeeded;
    summary.type1 /= succeeded;
    summary.jaccard /= succeeded;
    summary.selected_count /= succeeded;
    summary.se_power = sample_se(powers);
    summary.se_type1 = sample_se(type1s);
    summary.se_jaccard = sample_se(jaccards);
    return summary;
}

std::vector<GridCell> grid_sweep(const std::vector<Eigen::Index>& n_values,
                                 const std::vector<double>& rho_values,
                                 const std::vector<int>& l_values,
                                 const SimConfig& base_sim,
                                 const NabfsConfig& base_nabfs, int workers) {
    if (n_values.empty() || rho_values.empty() || l_values.empty()) {
        throw ValidationError("grid_sweep requires a nonempty grid");
    }
    std::vector<GridCell> cells;
    cells.reserve(n_values.size() * rho_values.size() * l_values.size());
    for (const Eigen::Index n : n_values) {
        for (const double rho : rho_values) {
            for (const int l : l_values) {
                GridCell cell;
                cell.n = n;
                cell.p = base_sim.p;
                cell.k = base_sim.k;
                cell.rho = rho;
                cell.l = l;
                cell.seed = base_sim.master_seed;
                SimConfig sim = base_sim;
                sim.n = n;
                sim.rho = rho;
                NabfsConfig nabfs = base_nabfs;
                nabfs.noise_count = l;
                try {
                    cell.summary = monte_carlo_run(sim, nabfs, workers);
                    cell.ok = true;
                } catch (const std::exception& err) {
                    cell.ok = false;
                    cell.error = err.what();
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

std::string grid_table_csv(const std::vector<GridCell>& cells) {
    std::ostringstream out;
    out << "n,p,k,rho,l,power,type1,jaccard,se_power,se_type1,se_jaccard,"
           "replicates,seed\n";
    char buf[512];
    for (const auto& cell : cells) {
        if (!cell.ok) continue;
        std::snprintf(buf, sizeof(buf),
                      "%lld,%d,%d,%.10g,%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,"
                      "%zu,%llu\n",
                      static_cast<long long>(cell.n), cell.p, cell.k, cell.rho,
                      cell.l, cell.summary.power, cell.summary.type1,
                      cell.summary.jaccard, cell.summary.se_power,
                      cell.summary.se_type1, cell.summary.se_jaccard,
                      cell.summary.per_replicate.size(),
                      static_cast<unsigned long long>(cell.seed));
        out << buf;
    }
    return out.str();
}

double auc_score(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
    if (scores.size() != labels.size()) {
        throw DimensionMismatchError("scores and labels differ in length");
    }
    const auto n = static_cast<std::size_t>(scores.size());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores(static_cast<Eigen::Index>(a)) <
               scores(static_cast<Eigen::Index>(b));
    });
    // mid-rank sum over positives (ties count half)
    double rank_sum_pos = 0.0;
    std::size_t n_pos = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores(static_cast<Eigen::Index>(order[j])) ==
                            scores(static_cast<Eigen::Index>(order[i]))) {
            ++j;
        }
        const double midrank = static_cast<double>(i + j + 1) / 2.0;
        for (std::size_t t = i; t < j; ++t) {
            if (labels(static_cast<Eigen::Index>(order[t])) == 1.0) {
                rank_sum_pos += midrank;
                ++n_pos;
            }
        }
        i = j;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) return 0.5;
    const double np = static_cast<double>(n_pos);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) /
           (np * static_cast<double>(n_neg));
}

double f1_score(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
    if (scores.size() != labels.size()) {
        throw DimensionMismatchError("scores and labels differ in length");
    }
    std::size_t tp = 0, fp = 0, fn = 0;
    for (Eigen::Index i = 0; i < scores.size(); ++i) {
        const bool pred = scores(i) >= 0.5;
        const bool truth = labels(i) == 1.0;
        if (pred && truth) ++tp;
        else if (pred && !truth) ++fp;
        else if (!pred && truth) ++fn;
    }
    if (tp == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    return 2.0 * precision * recall / (precision + recall);
}

SubsetEvaluation evaluate_subset(const Dataset& data,
                                 const std::vector<int>& selected,
                                 const LearnerSpec& spec, std::uint64_t seed,
                                 double test_fraction) {
    check_dataset(data);
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ValidationError("test_fraction must lie in (0, 1)");
    }
    for (int j : selected) {
        if (j < 0 || j >= data.n_features()) {
            throw ValidationError("selected column " + std::to_string(j) +
                                  " out of range");
        }
    }
    const Eigen::Index n = data.n_rows();
    const auto n_test = std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::floor(test_fraction * static_cast<double>(n))));
    const Eigen::Index n_train = n - n_test;
    if (n_train < 2) throw ValidationError("holdout split leaves fewer than 2 training rows");

    const bool classification = data.task == TaskKind::BinaryClassification;
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    bool split_ok = false;
    for (int attempt = 0; attempt < 10 && !split_ok; ++attempt) {
        Rng rng(substream_seed(seed, SeedStream::Holdout,
                               static_cast<std::uint64_t>(attempt)));
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        for (std::size_t i = perm.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.next_below(i));
            std::swap(perm[i - 1], perm[j]);
        }
        if (!classification) {
            split_ok = true;
            break;
        }
        bool zero = false, one = false;
        for (Eigen::Index i = n_test; i < n; ++i) {
            const double y = data.response(perm[static_cast<std::size_t>(i)]);
            zero = zero || y == 0.0;
            one = one || y == 1.0;
        }
        split_ok = zero && one;
    }
    if (!split_ok) {
        throw DegenerateResponseError("holdout training split stayed single-class");
    }

    const auto cols = static_cast<Eigen::Index>(selected.size());
    Eigen::MatrixXd X_train(n_train, cols), X_test(n_test, cols);
    Eigen::VectorXd y_train(n_train), y_test(n_test);
    for (Eigen::Index i = 0; i < n_test; ++i) {
        const Eigen::Index src = perm[static_cast<std::size_t>(i)];
        for (Eigen::Index c = 0; c < cols; ++c) {
            X_test(i, c) = data.features(src, selected[static_cast<std::size_t>(c)]);
        }
        y_test(i) = data.response(src);
    }
    for (Eigen::Index i = 0; i < n_train; ++i) {
        const Eigen::Index src = perm[static_cast<std::size_t>(n_test + i)];
        for (Eigen::Index c = 0; c < cols; ++c) {
            X_train(i, c) = data.features(src, selected[static_cast<std::size_t>(c)]);
        }
        y_train(i) = data.response(src);
    }

    SubsetEvaluation eval;
    eval.task = data.task;
    Eigen::VectorXd scores;
    if (selected.empty()) {
        eval.empty_selection = true;
        const double constant = y_train.mean();
        scores = Eigen::VectorXd::Constant(n_test, constant);
    } else {
        const FittedModel model =
            fit_model(X_train, y_train, data.task, spec,
                      substream_seed(seed, SeedStream::EvalFit));
        scores = model.predict(X_test);
    }

    if (classification) {
        eval.auc = auc_score(scores, y_test);
        eval.f1 = f1_score(scores, y_test);
    } else {
        const double sse = (scores - y_test).squaredNorm();
        eval.rmse = std::sqrt(sse / static_cast<double>(n_test));
        const double mean = y_test.mean();
        const double sst = (y_test.array() - mean).square().sum();
        eval.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;
    }
    return eval;
}

std::vector<double> tplus_nested_curve(const Eigen::VectorXd& importances,
                                       const Eigen::MatrixXd& noise_importances) {
    if (noise_importances.rows() != importances.size()) {
        throw DimensionMismatchError("noise draw rows must match importance length");
    }
    if (noise_importances.cols() < 1) {
        throw ValidationError("nested curve needs at least one noise column");
    }
    const Eigen::Index b = importances.size();
    const Eigen::Index levels = noise_importances.cols();
    std::vector<double> curve;
    curve.reserve(static_cast<std::size_t>(levels));
    Eigen::VectorXd running_max =
        Eigen::VectorXd::Constant(b, -std::numeric_limits<double>::infinity());
    for (Eigen::Index l = 0; l < levels; ++l) {
        running_max = running_max.cwiseMax(noise_importances.col(l));
        const Eigen::VectorXd diffs = importances - running_max;
        curve.push_back(wilcoxon_one_sided(diffs, 1).t_plus);
    }
    return curve;
}

std::pair<double, double> tplus_a1_pair(const Eigen::VectorXd& d,
                                        const Eigen::VectorXd& d_next) {
    if (d.size() != d_next.size()) {
        throw DimensionMismatchError("difference vectors differ in length");
    }
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d_next(i) > d(i)) {
            throw InputViolatesA1Error(
                "difference " + std::to_string(i) +
                " increased from level l to l+1, violating the monotone-"
                "difference premise");
        }
    }
    return {wilcoxon_one_sided(d, 1).t_plus, wilcoxon_one_sided(d_next, 1).t_plus};
}

MonotonicityReport monotonicity_probe(const MonotonicityProbeConfig& config,
                                      int workers) {
    if (config.trials < 1) throw ValidationError("probe trials must be >= 1");
    if (config.pairs < 1) throw ValidationError("probe pairs must be >= 1");
    if (config.max_noise < 2) throw ValidationError("probe max_noise must be >= 2");

    MonotonicityReport report;
    report.trials = config.trials;
    report.min_crossover_drop = std::numeric_limits<double>::infinity();

    for (int trial = 0; trial < config.trials; ++trial) {
        Rng rng(substream_seed(config.seed, SeedStream::Probe,
                               static_cast<std::uint64_t>(trial)));
        // nested construction: fixed importance draw, noise maxima over a
        // growing probe set
        Eigen::VectorXd imp(config.pairs);
        Eigen::MatrixXd noise(config.pairs, config.max_noise);
        for (Eigen::Index i = 0; i < imp.size(); ++i) {
            imp(i) = std::abs(rng.next_normal());
        }
        for (Eigen::Index i = 0; i < noise.rows(); ++i) {
            for (Eigen::Index l = 0; l < noise.cols(); ++l) {
                noise(i, l) = std::abs(rng.next_normal());
            }
        }
        const std::vector<double> curve = tplus_nested_curve(imp, noise);
        for (std::size_t l = 1; l < curve.size(); ++l) {
            if (curve[l] > curve[l - 1]) ++report.violations;
        }

        // single cross-over: one positive difference flips sign while every
        // other difference moves weakly down (positives shrink, negatives
        // deepen)
        Eigen::VectorXd base(config.pairs);
        int positives = 0;
        for (Eigen::Index i = 0; i < base.size(); ++i) {
            double v = rng.next_normal();
            if (v == 0.0) v = 0.5;
            base(i) = v;
            if (v > 0.0) ++positives;
        }
        if (positives == 0) {
            base(0) = std::abs(base(0));
            positives = 1;
        }
        int flip = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(positives)));
        Eigen::VectorXd next(config.pairs);
        for (Eigen::Index i = 0; i < base.size(); ++i) {
            if (base(i) > 0.0) {
                if (flip == 0) {
                    next(i) = -0.25 * base(i);  // the cross-over
                    flip = -1;
                } else {
                    next(i) = 0.5 * base(i);
                    --flip;
                }
            } else {
                next(i) = 1.5 * base(i);
            }
        }
        const auto [t_base, t_next] = tplus_a1_pair(base, next);
        ++report.crossover_trials;
        const double drop = t_base - t_next;
        if (drop >= 1.0) ++report.crossover_ok;
        report.min_crossover_drop = std::min(report.min_crossover_drop, drop);
    }

    if (!config.empirical_l.empty()) {
        report.empirical =
            grid_sweep({config.sim.n}, {config.sim.rho}, config.empirical_l,
                       config.sim, config.nabfs, workers);
    }
    return report;
}

}  // namespace nabfs

#include "nabfs/pipeline.hpp"

#include <chrono>

#include "nabfs/holm.hpp"
#include "nabfs/noise.hpp"
#include "nabfs/resampling.hpp"
#include "nabfs/rng.hpp"
#include "nabfs/wilcoxon.hpp"

namespace nabfs {

void validate_config(const NabfsConfig& config) {
    if (config.noise_count < 1) throw ValidationError("noise_count must be >= 1");
    if (config.bootstrap_count < 2) throw ValidationError("bootstrap_count must be >= 2");
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw ValidationError("alpha must lie in (0, 1)");
    }
    if (!(config.noise_sd > 0.0)) throw ValidationError("noise_sd must be > 0");
    if (config.exact_wsr_max_pairs < 1) {
        throw ValidationError("exact_wsr_max_pairs must be >= 1");
    }
}

SelectionReport nabfs_select(const Dataset& data, const NabfsConfig& config,
                             int workers) {
    const auto start = std::chrono::steady_clock::now();
    validate_config(config);
    check_dataset(data);
    validate_learner(config.learner, data.task);

    const AugmentedDataset aug =
        augment(data, config.noise_count, config.noise_mean, config.noise_sd,
                substream_seed(config.seed, SeedStream::NoiseAugment));
    const BootstrapPlan plan = BootstrapPlan::make(
        config.seed, config.bootstrap_count, data.n_rows());
    const ImportanceMatrix imp =
        replicate_importances(aug, config.learner, plan, workers);

    const Eigen::Index p = data.n_features();
    std::vector<double> raw(static_cast<std::size_t>(p));
    std::vector<WsrResult> tests(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        const DifferenceSeries series = paired_differences(imp, j);
        tests[static_cast<std::size_t>(j)] =
            wilcoxon_one_sided(series.diffs, config.exact_wsr_max_pairs);
        raw[static_cast<std::size_t>(j)] =
            tests[static_cast<std::size_t>(j)].p_value;
    }
    const AdjustedPValues adjusted = holm_adjust(raw);

    SelectionReport report;
    report.method = "nabfs";
    report.task = data.task;
    report.config = config;
    report.n_rows = data.n_rows();
    report.features.reserve(static_cast<std::size_t>(p));
    const NoiseMaxSeries nm = noise_max(imp);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        FeatureDecision row;
        row.name = data.feature_names[uj];
        row.mean_importance = imp.real.col(j).mean();
        row.mean_noise_margin = (imp.real.col(j) - nm).mean();
        row.t_plus = tests[uj].t_plus;
        row.effective_pairs = tests[uj].effective_pairs;
        row.p_raw = adjusted.raw[uj];
        row.p_adjusted = adjusted.adjusted[uj];
        row.selected = adjusted.adjusted[uj] < config.alpha;
        report.features.push_back(std::move(row));
    }
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

SelectionReport naive_threshold_select(const Dataset& data,
                                       const NabfsConfig& config,
                                       int workers) {
    const auto start = std::chrono::steady_clock::now();
    validate_config(config);
    check_dataset(data);
    validate_learner(config.learner, data.task);

    const AugmentedDataset aug =
        augment(data, config.noise_count, config.noise_mean, config.noise_sd,
                substream_seed(config.seed, SeedStream::NoiseAugment));
    const Eigen::VectorXd values = fit_importances(
        aug.combined(), data.response, data.task, config.learner,
        substream_seed(config.seed, SeedStream::NaiveFit), workers);

    const Eigen::Index p = data.n_features();
    const double threshold = values.tail(aug.n_noise()).maxCoeff();

    SelectionReport report;
    report.method = "naive";
    report.task = data.task;
    report.config = config;
    report.n_rows = data.n_rows();
    report.features.reserve(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        FeatureDecision row;
        row.name = data.feature_names[static_cast<std::size_t>(j)];
        row.mean_importance = values(j);
        row.mean_noise_margin = values(j) - threshold;
        // strictly above the strongest probe; ties are excluded
        row.selected = values(j) > threshold;
        report.features.push_back(std::move(row));
    }
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

std::vector<std::string> SelectionReport::selected_names() const {
    std::vector<std::string> names;
    for (const auto& row : features) {
        if (row.selected) names.push_back(row.name);
    }
    return names;
}

}  // namespace nabfs

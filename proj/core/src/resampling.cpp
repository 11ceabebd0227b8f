#include "nabfs/resampling.hpp"

#include "nabfs/parallel.hpp"
#include "nabfs/rng.hpp"

namespace nabfs {

BootstrapPlan BootstrapPlan::make(std::uint64_t master_seed,
                                  int replicate_count,
                                  Eigen::Index sample_size) {
    if (replicate_count < 1) throw ValidationError("replicate_count must be >= 1");
    if (sample_size < 1) throw ValidationError("sample_size must be >= 1");
    BootstrapPlan plan;
    plan.replicate_count = replicate_count;
    plan.sample_size = sample_size;
    plan.master_seed = master_seed;
    plan.seeds.reserve(static_cast<std::size_t>(replicate_count));
    for (int i = 0; i < replicate_count; ++i) {
        plan.seeds.push_back(substream_seed(master_seed, SeedStream::BootstrapDraw,
                                            static_cast<std::uint64_t>(i)));
    }
    return plan;
}

std::uint64_t BootstrapPlan::redraw_seed(int replicate, int attempt) const {
    return substream_seed(master_seed, SeedStream::BootstrapRedraw,
                          static_cast<std::uint64_t>(replicate) * 64u +
                              static_cast<std::uint64_t>(attempt));
}

std::uint64_t BootstrapPlan::learner_seed(int replicate) const {
    return substream_seed(master_seed, SeedStream::LearnerFit,
                          static_cast<std::uint64_t>(replicate));
}

std::vector<Eigen::Index> bootstrap_indices(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("bootstrap sample size must be >= 1");
    Rng rng(seed);
    std::vector<Eigen::Index> indices(static_cast<std::size_t>(n));
    for (auto& idx : indices) {
        idx = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
    }
    return indices;
}

namespace {

void gather_rows(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 const std::vector<Eigen::Index>& indices,
                 Eigen::MatrixXd& Xout, Eigen::VectorXd& yout) {
    const auto n = static_cast<Eigen::Index>(indices.size());
    Xout.resize(n, X.cols());
    yout.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Xout.row(i) = X.row(indices[static_cast<std::size_t>(i)]);
        yout(i) = y(indices[static_cast<std::size_t>(i)]);
    }
}

bool single_class(const Eigen::VectorXd& y) {
    return (y.array() == y(0)).all();
}

}  // namespace

ImportanceMatrix replicate_importances(const AugmentedDataset& aug,
                                       const LearnerSpec& spec,
                                       const BootstrapPlan& plan,
                                       int workers) {
    const Eigen::Index p = aug.n_real();
    const Eigen::Index l = aug.n_noise();
    const Eigen::Index n = aug.n_rows();
    const bool classification =
        aug.base.task == TaskKind::BinaryClassification;
    const Eigen::MatrixXd combined = aug.combined();

    ImportanceMatrix imp;
    imp.real.resize(plan.replicate_count, p);
    imp.noise.resize(plan.replicate_count, l);

    parallel_for(
        static_cast<std::size_t>(plan.replicate_count), workers,
        [&](std::size_t i) {
            const int replicate = static_cast<int>(i);
            Eigen::MatrixXd Xi;
            Eigen::VectorXd yi;
            bool drawn = false;
            for (int attempt = 0; attempt < 10; ++attempt) {
                const std::uint64_t seed =
                    attempt == 0 ? plan.seeds[i]
                                 : plan.redraw_seed(replicate, attempt);
                const auto indices = bootstrap_indices(n, seed);
                gather_rows(combined, aug.base.response, indices, Xi, yi);
                if (!classification || !single_class(yi)) {
                    drawn = true;
                    break;
                }
            }
            if (!drawn) throw DegenerateReplicateError(i);

            try {
                const Eigen::VectorXd values = fit_importances(
                    Xi, yi, aug.base.task, spec, plan.learner_seed(replicate),
                    /*workers=*/1);
                imp.real.row(static_cast<Eigen::Index>(i)) =
                    values.head(p).transpose();
                imp.noise.row(static_cast<Eigen::Index>(i)) =
                    values.tail(l).transpose();
            } catch (const NonConvergenceError& err) {
                throw NonConvergenceError(err.iterations,
                                          "replicate " + std::to_string(i));
            }
        });
    return imp;
}

NoiseMaxSeries noise_max(const ImportanceMatrix& imp) {
    if (imp.noise.cols() < 1) throw ValidationError("importance matrix has no noise block");
    return imp.noise.rowwise().maxCoeff();
}

DifferenceSeries paired_differences(const ImportanceMatrix& imp,
                                    Eigen::Index feature) {
    if (feature < 0 || feature >= imp.real.cols()) {
        throw ValidationError("feature index " + std::to_string(feature) +
                              " out of range");
    }
    DifferenceSeries series;
    series.feature_index = feature;
    series.diffs = imp.real.col(feature) - noise_max(imp);
    return series;
}

}  // namespace nabfs

#include "nabfs/noise.hpp"

#include <unordered_set>

#include "nabfs/rng.hpp"

namespace nabfs {

Eigen::MatrixXd AugmentedDataset::combined() const {
    Eigen::MatrixXd out(n_rows(), total_columns());
    out.leftCols(n_real()) = base.features;
    out.rightCols(n_noise()) = noise;
    return out;
}

AugmentedDataset augment(const Dataset& data, int noise_count, double mean,
                         double sd, std::uint64_t seed) {
    if (noise_count < 1) throw ValidationError("noise_count must be >= 1");
    if (!(sd > 0.0)) throw ValidationError("noise sd must be > 0");

    AugmentedDataset aug;
    aug.base = data;

    const Eigen::Index n = data.n_rows();
    aug.noise.resize(n, noise_count);
    Rng rng(seed);
    // column-at-a-time draws: a run with more probes extends this stream,
    // so the first columns are shared across noise counts at a fixed seed
    for (int k = 0; k < noise_count; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            aug.noise(i, k) = rng.next_normal(mean, sd);
        }
    }

    std::unordered_set<std::string> taken(data.feature_names.begin(),
                                          data.feature_names.end());
    aug.noise_names.reserve(static_cast<std::size_t>(noise_count));
    for (int k = 0; k < noise_count; ++k) {
        std::string candidate = "noise_" + std::to_string(k + 1);
        int attempts = 0;
        while (taken.count(candidate) != 0) {
            if (++attempts > 100) throw NameCollisionError(candidate);
            candidate += "_";
        }
        taken.insert(candidate);
        aug.noise_names.push_back(std::move(candidate));
    }
    return aug;
}

}  // namespace nabfs

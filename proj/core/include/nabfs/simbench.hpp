#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nabfs/config.hpp"
#include "nabfs/dataset.hpp"

namespace nabfs {

// Compound-symmetric logistic simulation design: each observation is
// X_i = sqrt(1-rho) * Z_i + sqrt(rho) * C_i * 1 with Z_i ~ N(0, I_p) and
// C_i ~ N(0, 1), the first k coefficients drawn Uniform(coef_low, coef_high)
// and the rest zero, and Y_i ~ Bernoulli(sigmoid(X_i' beta)). k = 0 gives a
// global-null dataset.
struct SimConfig {
    Eigen::Index n = 500;
    int p = 50;
    int k = 20;  // true signals, occupying the first k columns
    double rho = 0.0;
    double coef_low = -2.0;
    double coef_high = 2.0;
    int replicates = 30;  // Monte Carlo repetitions
    std::uint64_t master_seed = 0;
    bool redraw_coefficients = true;  // fresh beta per Monte Carlo replicate
};

void validate_sim_config(const SimConfig& sim);

struct GeneratedDataset {
    Dataset data;
    std::vector<bool> true_support;  // length p
    Eigen::VectorXd beta;
};

// Deterministic per (sim, seed). The response is redrawn up to 10 times if
// it comes up single-class, then DegenerateResponseError.
GeneratedDataset generate_dataset(const SimConfig& sim, std::uint64_t seed);
// Same, but with a caller-supplied coefficient vector.
GeneratedDataset generate_dataset(const SimConfig& sim, std::uint64_t seed,
                                  const Eigen::VectorXd& beta);

struct ReplicateMetrics {
    double power = 0.0;    // |S ∩ T| / k         (0 when k = 0)
    double type1 = 0.0;    // |S ∩ T^c| / (p - k) (0 when p = k)
    double jaccard = 0.0;  // |S ∩ T| / |S ∪ T|   (1 when both empty)
    int selected_count = 0;
};

ReplicateMetrics selection_metrics(const std::vector<bool>& selected,
                                   const std::vector<bool>& truth);

struct MetricSummary {
    double power = 0.0;
    double type1 = 0.0;
    double jaccard = 0.0;
    double selected_count = 0.0;
    double se_power = 0.0;
    double se_type1 = 0.0;
    double se_jaccard = 0.0;
    std::vector<ReplicateMetrics> per_replicate;
    int failed_replicates = 0;
};

// Average selection metrics over sim.replicates Monte Carlo repetitions with
// counter-derived seeds (extending replicates reuses earlier results
// exactly). Fails when more than 20% of replicates abort.
MetricSummary monte_carlo_run(const SimConfig& sim, const NabfsConfig& nabfs,
                              int workers = 1);

struct GridCell {
    Eigen::Index n = 0;
    int p = 0;
    int k = 0;
    double rho = 0.0;
    int l = 0;
    std::uint64_t seed = 0;
    MetricSummary summary;
    bool ok = false;
    std::string error;
};

// One Monte Carlo summary per (n, rho, l) cell. Every cell reuses the same
// master seed, so cells differing only in l see identical datasets and
// nested noise draws. Per-cell failures are recorded and the sweep
// continues.
std::vector<GridCell> grid_sweep(const std::vector<Eigen::Index>& n_values,
                                 const std::vector<double>& rho_values,
                                 const std::vector<int>& l_values,
                                 const SimConfig& base_sim,
                                 const NabfsConfig& base_nabfs,
                                 int workers = 1);

// Flat table of the successful cells with columns
// n,p,k,rho,l,power,type1,jaccard,se_power,se_type1,se_jaccard,replicates,seed.
std::string grid_table_csv(const std::vector<GridCell>& cells);

// ---- held-out evaluation of a selected subset ----

struct SubsetEvaluation {
    TaskKind task = TaskKind::BinaryClassification;
    bool empty_selection = false;  // constant predictor was evaluated
    double f1 = 0.0;               // classification
    double auc = 0.0;              // classification; ties count 0.5
    double rmse = 0.0;             // regression
    double r_squared = 0.0;        // regression
};

// Seeded holdout split (default 70/30), fit on train with the selected
// columns only, score on test. An empty selection evaluates a constant
// predictor and flags it.
SubsetEvaluation evaluate_subset(const Dataset& data,
                                 const std::vector<int>& selected,
                                 const LearnerSpec& spec, std::uint64_t seed,
                                 double test_fraction = 0.3);

// Rank-based AUC with mid-rank tie handling; labels in {0, 1}.
double auc_score(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);
// F1 of class 1 at the 0.5 probability threshold; 0 when undefined.
double f1_score(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

// ---- monotonicity probes for the signed-rank statistic ----

// T+ at noise levels l = 1..L for a fixed importance draw, with the noise
// maximum taken over the first l columns (nested construction, which
// satisfies the monotone-difference premise by construction).
std::vector<double> tplus_nested_curve(const Eigen::VectorXd& importances,
                                       const Eigen::MatrixXd& noise_importances);

// Validates that d_next <= d componentwise (throws InputViolatesA1Error) and
// returns {T+(d), T+(d_next)}.
std::pair<double, double> tplus_a1_pair(const Eigen::VectorXd& d,
                                        const Eigen::VectorXd& d_next);

struct MonotonicityProbeConfig {
    int trials = 1000;
    int pairs = 50;      // differences per trial
    int max_noise = 7;   // nested noise levels per trial
    std::uint64_t seed = 0;
    // Optional statistical probe: empirical metric curves over these noise
    // counts on simulated data.
    std::vector<int> empirical_l;
    SimConfig sim;
    NabfsConfig nabfs;
};

struct MonotonicityReport {
    int trials = 0;
    int violations = 0;        // T+ increased along a nested curve
    int crossover_trials = 0;  // constructed single sign cross-overs
    int crossover_ok = 0;      // cross-over dropped T+ by >= 1
    double min_crossover_drop = 0.0;
    std::vector<GridCell> empirical;  // one cell per requested l
};

MonotonicityReport monotonicity_probe(const MonotonicityProbeConfig& config,
                                      int workers = 1);

}  // namespace nabfs

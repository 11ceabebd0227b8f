#include <doctest.h>

#include <cmath>
#include <vector>

#include "nabfs/rng.hpp"
#include "nabfs/simbench.hpp"

using nabfs::NabfsConfig;
using nabfs::Rng;
using nabfs::SimConfig;

namespace {

double mean_offdiag_correlation(const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    Eigen::MatrixXd centered = X;
    for (Eigen::Index j = 0; j < p; ++j) {
        centered.col(j).array() -= X.col(j).mean();
    }
    Eigen::VectorXd norms(p);
    for (Eigen::Index j = 0; j < p; ++j) norms(j) = centered.col(j).norm();
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index a = 0; a < p; ++a) {
        for (Eigen::Index b = a + 1; b < p; ++b) {
            sum += centered.col(a).dot(centered.col(b)) / (norms(a) * norms(b));
            ++count;
        }
    }
    (void)n;
    return sum / count;
}

NabfsConfig quick_nabfs() {
    NabfsConfig config;
    config.noise_count = 2;
    config.bootstrap_count = 10;
    return config;
}

}  // namespace

TEST_CASE("generate: rho = 0 gives near-orthogonal columns") {
    SimConfig sim;
    sim.n = 2000;
    sim.p = 10;
    sim.k = 2;
    sim.rho = 0.0;
    const auto gen = nabfs::generate_dataset(sim, 1);
    const double corr = mean_offdiag_correlation(gen.data.features);
    CHECK(std::abs(corr) <= 3.0 / std::sqrt(2000.0));
    CHECK(gen.data.task == nabfs::TaskKind::BinaryClassification);
    CHECK(gen.true_support[0]);
    CHECK_FALSE(gen.true_support[9]);
}

TEST_CASE("generate: rho = 1 collapses every feature onto the shared draw") {
    SimConfig sim;
    sim.n = 50;
    sim.p = 5;
    sim.k = 1;
    sim.rho = 1.0;
    const auto gen = nabfs::generate_dataset(sim, 2);
    for (Eigen::Index j = 1; j < 5; ++j) {
        CHECK(gen.data.features.col(j) == gen.data.features.col(0));
    }
}

TEST_CASE("generate: rho = 0.4 at n = 5000 matches the target correlation") {
    SimConfig sim;
    sim.n = 5000;
    sim.p = 12;
    sim.k = 3;
    sim.rho = 0.4;
    const auto gen = nabfs::generate_dataset(sim, 3);
    CHECK(std::abs(mean_offdiag_correlation(gen.data.features) - 0.4) <= 0.03);
}

TEST_CASE("generate: deterministic per seed and beta redrawn per seed") {
    SimConfig sim;
    sim.n = 40;
    sim.p = 4;
    sim.k = 2;
    const auto a = nabfs::generate_dataset(sim, 9);
    const auto b = nabfs::generate_dataset(sim, 9);
    CHECK(a.data.features == b.data.features);
    CHECK(a.data.response == b.data.response);
    CHECK(a.beta == b.beta);
    const auto c = nabfs::generate_dataset(sim, 10);
    CHECK(a.beta != c.beta);
    // supplied coefficients are used verbatim
    const auto d = nabfs::generate_dataset(sim, 9, a.beta);
    CHECK(d.beta == a.beta);
}

TEST_CASE("metrics: worked example") {
    // selected {f2, f3}, truth {f3, f4} among five features
    const std::vector<bool> selected{false, true, true, false, false};
    const std::vector<bool> truth{false, false, true, true, false};
    const auto m = nabfs::selection_metrics(selected, truth);
    CHECK(m.power == doctest::Approx(0.5));
    CHECK(m.type1 == doctest::Approx(1.0 / 3.0));
    CHECK(m.jaccard == doctest::Approx(1.0 / 3.0));
    CHECK(m.selected_count == 2);
}

TEST_CASE("metrics: exact recovery and empty selection") {
    const std::vector<bool> truth{true, true, false};
    const auto perfect = nabfs::selection_metrics(truth, truth);
    CHECK(perfect.power == 1.0);
    CHECK(perfect.type1 == 0.0);
    CHECK(perfect.jaccard == 1.0);

    const std::vector<bool> none{false, false, false};
    const auto empty = nabfs::selection_metrics(none, truth);
    CHECK(empty.power == 0.0);
    CHECK(empty.type1 == 0.0);
    CHECK(empty.jaccard == 0.0);

    // both sets empty: jaccard convention is 1
    const auto both_empty = nabfs::selection_metrics(none, none);
    CHECK(both_empty.jaccard == 1.0);
}

TEST_CASE("metrics: invariant under feature relabeling") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = 8;
        std::vector<bool> selected(p), truth(p);
        for (int j = 0; j < p; ++j) {
            selected[static_cast<std::size_t>(j)] = rng.next_below(2) == 1;
            truth[static_cast<std::size_t>(j)] = rng.next_below(2) == 1;
        }
        const auto base = nabfs::selection_metrics(selected, truth);
        std::vector<std::size_t> perm(p);
        for (int j = 0; j < p; ++j) perm[static_cast<std::size_t>(j)] = static_cast<std::size_t>(j);
        for (std::size_t i = perm.size(); i > 1; --i) {
            std::swap(perm[i - 1], perm[rng.next_below(i)]);
        }
        std::vector<bool> sel_p(p), truth_p(p);
        for (int j = 0; j < p; ++j) {
            sel_p[static_cast<std::size_t>(j)] = selected[perm[static_cast<std::size_t>(j)]];
            truth_p[static_cast<std::size_t>(j)] = truth[perm[static_cast<std::size_t>(j)]];
        }
        const auto moved = nabfs::selection_metrics(sel_p, truth_p);
        CHECK(base.power == moved.power);
        CHECK(base.type1 == moved.type1);
        CHECK(base.jaccard == moved.jaccard);
    }
}

TEST_CASE("monte_carlo: one replicate equals its own summary") {
    SimConfig sim;
    sim.n = 80;
    sim.p = 4;
    sim.k = 1;
    sim.replicates = 1;
    sim.master_seed = 5;
    const auto summary = nabfs::monte_carlo_run(sim, quick_nabfs());
    REQUIRE(summary.per_replicate.size() == 1);
    CHECK(summary.power == summary.per_replicate[0].power);
    CHECK(summary.type1 == summary.per_replicate[0].type1);
    CHECK(summary.jaccard == summary.per_replicate[0].jaccard);
    CHECK(summary.se_power == 0.0);
}

TEST_CASE("monte_carlo: extending replicates reuses the earlier runs") {
    SimConfig sim;
    sim.n = 80;
    sim.p = 4;
    sim.k = 1;
    sim.master_seed = 6;
    sim.replicates = 3;
    const auto first = nabfs::monte_carlo_run(sim, quick_nabfs());
    sim.replicates = 6;
    const auto second = nabfs::monte_carlo_run(sim, quick_nabfs());
    REQUIRE(second.per_replicate.size() == 6);
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(first.per_replicate[r].power == second.per_replicate[r].power);
        CHECK(first.per_replicate[r].type1 == second.per_replicate[r].type1);
        CHECK(first.per_replicate[r].jaccard == second.per_replicate[r].jaccard);
    }
}

TEST_CASE("monte_carlo: deterministic across worker counts") {
    SimConfig sim;
    sim.n = 70;
    sim.p = 3;
    sim.k = 1;
    sim.replicates = 6;
    sim.master_seed = 8;
    const auto serial = nabfs::monte_carlo_run(sim, quick_nabfs(), 1);
    const auto parallel = nabfs::monte_carlo_run(sim, quick_nabfs(), 8);
    CHECK(serial.power == parallel.power);
    CHECK(serial.type1 == parallel.type1);
    CHECK(serial.jaccard == parallel.jaccard);
}

TEST_CASE("grid: single cell matches monte_carlo_run") {
    SimConfig sim;
    sim.n = 80;
    sim.p = 4;
    sim.k = 1;
    sim.replicates = 2;
    sim.master_seed = 11;
    auto nabfs_cfg = quick_nabfs();
    const auto cells = nabfs::grid_sweep({80}, {0.1}, {2}, sim, nabfs_cfg);
    REQUIRE(cells.size() == 1);
    REQUIRE(cells[0].ok);
    sim.rho = 0.1;
    nabfs_cfg.noise_count = 2;
    const auto direct = nabfs::monte_carlo_run(sim, nabfs_cfg);
    CHECK(cells[0].summary.power == direct.power);
    CHECK(cells[0].summary.type1 == direct.type1);
    CHECK(cells[0].summary.jaccard == direct.jaccard);
}

TEST_CASE("grid: accepts the twelve-level correlation ladder") {
    const std::vector<double> rho_grid{0.0, 0.01, 0.02, 0.05, 0.1, 0.2,
                                       0.4, 0.5, 0.6, 0.8, 0.9, 1.0};
    SimConfig sim;
    sim.n = 60;
    sim.p = 3;
    sim.k = 1;
    sim.replicates = 1;
    sim.master_seed = 13;
    for (double rho : rho_grid) {
        sim.rho = rho;
        CHECK_NOTHROW(nabfs::validate_sim_config(sim));
    }
    const auto cells = nabfs::grid_sweep({60}, rho_grid, {1, 2}, sim, quick_nabfs());
    CHECK(cells.size() == 24);
    const auto csv = nabfs::grid_table_csv(cells);
    CHECK(csv.rfind("n,p,k,rho,l,power,type1,jaccard,se_power,se_type1,"
                    "se_jaccard,replicates,seed\n", 0) == 0);
}

TEST_CASE("grid: k = 0 runs a global-null simulation") {
    SimConfig sim;
    sim.n = 80;
    sim.p = 4;
    sim.k = 0;
    sim.replicates = 2;
    sim.master_seed = 17;
    const auto summary = nabfs::monte_carlo_run(sim, quick_nabfs());
    CHECK(summary.power == 0.0);
    for (const auto& rep : summary.per_replicate) {
        CHECK(rep.power == 0.0);
        CHECK(rep.type1 >= 0.0);
    }
}

TEST_CASE("evaluate: a perfect feature separates the toy data") {
    Rng rng(31);
    nabfs::Dataset data;
    const Eigen::Index n = 120;
    data.features.resize(n, 2);
    data.response.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        data.response(i) = rng.next_below(2) == 0 ? 0.0 : 1.0;
        data.features(i, 0) = data.response(i);  // separable column
        data.features(i, 1) = rng.next_normal();
    }
    if (data.response.minCoeff() == data.response.maxCoeff()) data.response(0) = 1.0 - data.response(0);
    data.feature_names = {"signal", "junk"};
    data.task = nabfs::TaskKind::BinaryClassification;

    const auto eval = nabfs::evaluate_subset(data, {0}, nabfs::LogisticSpec{}, 3);
    CHECK_FALSE(eval.empty_selection);
    CHECK(eval.auc == doctest::Approx(1.0));
    CHECK(eval.f1 == doctest::Approx(1.0));

    // empty selection: constant predictor, AUC 0.5 by the tie convention
    const auto empty = nabfs::evaluate_subset(data, {}, nabfs::LogisticSpec{}, 3);
    CHECK(empty.empty_selection);
    CHECK(empty.auc == doctest::Approx(0.5));
}

TEST_CASE("evaluate: random scores sit near AUC one half") {
    Rng rng(32);
    const Eigen::Index n = 2000;
    Eigen::VectorXd scores(n), labels(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        scores(i) = rng.next_normal();
        labels(i) = rng.next_below(2) == 0 ? 0.0 : 1.0;
    }
    CHECK(std::abs(nabfs::auc_score(scores, labels) - 0.5) <= 0.05);
}

TEST_CASE("evaluate: regression metrics on a noiseless line") {
    Rng rng(33);
    nabfs::Dataset data;
    const Eigen::Index n = 200;
    data.features.resize(n, 1);
    data.response.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        data.features(i, 0) = rng.next_normal();
        data.response(i) = 3.0 * data.features(i, 0) + 1.0;
    }
    data.feature_names = {"x"};
    data.task = nabfs::TaskKind::Regression;
    nabfs::LinearSpec spec;
    spec.l2_penalty = 0.0;
    const auto eval = nabfs::evaluate_subset(data, {0}, spec, 4);
    CHECK(eval.rmse <= 1e-8);
    CHECK(eval.r_squared == doctest::Approx(1.0));
}

TEST_CASE("probe: nested curves never increase and cross-overs drop by one") {
    nabfs::MonotonicityProbeConfig config;
    config.trials = 300;
    config.pairs = 40;
    config.max_noise = 7;
    config.seed = 5;
    const auto report = nabfs::monotonicity_probe(config);
    CHECK(report.trials == 300);
    CHECK(report.violations == 0);
    CHECK(report.crossover_trials == 300);
    CHECK(report.crossover_ok == 300);
    CHECK(report.min_crossover_drop >= 1.0);
    CHECK(report.empirical.empty());
}

TEST_CASE("probe: violating input is rejected") {
    Eigen::VectorXd d(3), worse(3);
    d << 1.0, -2.0, 3.0;
    worse = d;
    worse(1) = -1.0;  // difference increased: not monotone
    CHECK_THROWS_AS((void)nabfs::tplus_a1_pair(d, worse),
                    nabfs::InputViolatesA1Error);
    worse(1) = -2.5;
    CHECK_NOTHROW((void)nabfs::tplus_a1_pair(d, worse));
}

TEST_CASE("probe: nested curve equals the direct recomputation") {
    Rng rng(41);
    Eigen::VectorXd imp(20);
    Eigen::MatrixXd noise(20, 4);
    for (Eigen::Index i = 0; i < 20; ++i) {
        imp(i) = std::abs(rng.next_normal());
        for (Eigen::Index l = 0; l < 4; ++l) noise(i, l) = std::abs(rng.next_normal());
    }
    const auto curve = nabfs::tplus_nested_curve(imp, noise);
    REQUIRE(curve.size() == 4);
    for (std::size_t l = 1; l < 4; ++l) CHECK(curve[l] <= curve[l - 1]);
}

TEST_CASE("sim config: invariants") {
    SimConfig sim;
    CHECK_NOTHROW(nabfs::validate_sim_config(sim));
    sim.k = sim.p + 1;
    CHECK_THROWS_AS(nabfs::validate_sim_config(sim), nabfs::ValidationError);
    sim = SimConfig{};
    sim.rho = 1.2;
    CHECK_THROWS_AS(nabfs::validate_sim_config(sim), nabfs::ValidationError);
    sim = SimConfig{};
    sim.coef_low = 2.0;
    sim.coef_high = 2.0;
    CHECK_THROWS_AS(nabfs::validate_sim_config(sim), nabfs::ValidationError);
}

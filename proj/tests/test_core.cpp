#include <doctest.h>

#include <Eigen/Dense>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nabfs/config.hpp"
#include "nabfs/dataset.hpp"
#include "nabfs/report.hpp"

using nabfs::Dataset;
using nabfs::TaskKind;

namespace {

Dataset small_binary_dataset() {
    Dataset data;
    data.feature_names = {"a", "b"};
    data.features.resize(4, 2);
    data.features << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0;
    data.response.resize(4);
    data.response << 0.0, 1.0, 0.0, 1.0;
    data.task = TaskKind::BinaryClassification;
    return data;
}

}  // namespace

TEST_CASE("dataset: valid 4x2 binary accepted") {
    CHECK_NOTHROW((void)nabfs::validate_dataset(small_binary_dataset()));
}

TEST_CASE("dataset: NaN rejected with position") {
    auto data = small_binary_dataset();
    data.features(2, 1) = std::nan("");
    try {
        (void)nabfs::validate_dataset(data);
        FAIL("expected NonFiniteValueError");
    } catch (const nabfs::NonFiniteValueError& err) {
        CHECK(err.row == 2);
        CHECK(err.col == 1);
    }
}

TEST_CASE("dataset: single-class response rejected") {
    auto data = small_binary_dataset();
    data.response << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS((void)nabfs::validate_dataset(data),
                    nabfs::DegenerateResponseError);
}

TEST_CASE("dataset: duplicate feature names rejected") {
    auto data = small_binary_dataset();
    data.feature_names = {"a", "a"};
    CHECK_THROWS_AS((void)nabfs::validate_dataset(data),
                    nabfs::DuplicateFeatureNameError);
}

TEST_CASE("dataset: non-binary classification response rejected") {
    auto data = small_binary_dataset();
    data.response(1) = 0.5;
    CHECK_THROWS_AS((void)nabfs::validate_dataset(data),
                    nabfs::DegenerateResponseError);
}

TEST_CASE("dataset: constant regression response rejected") {
    auto data = small_binary_dataset();
    data.task = TaskKind::Regression;
    data.response << 2.0, 2.0, 2.0, 2.0;
    CHECK_THROWS_AS((void)nabfs::validate_dataset(data),
                    nabfs::DegenerateResponseError);
}

TEST_CASE("dataset: too few rows rejected") {
    auto data = small_binary_dataset();
    data.features.conservativeResize(1, 2);
    data.response.conservativeResize(1);
    CHECK_THROWS_AS((void)nabfs::validate_dataset(data), nabfs::ValidationError);
}

TEST_CASE("config: invariants enforced") {
    nabfs::NabfsConfig config;
    CHECK_NOTHROW(nabfs::validate_config(config));
    auto bad = config;
    bad.noise_count = 0;
    CHECK_THROWS_AS(nabfs::validate_config(bad), nabfs::ValidationError);
    bad = config;
    bad.bootstrap_count = 1;
    CHECK_THROWS_AS(nabfs::validate_config(bad), nabfs::ValidationError);
    bad = config;
    bad.alpha = 1.0;
    CHECK_THROWS_AS(nabfs::validate_config(bad), nabfs::ValidationError);
    bad = config;
    bad.noise_sd = 0.0;
    CHECK_THROWS_AS(nabfs::validate_config(bad), nabfs::ValidationError);
}

namespace {

nabfs::SelectionReport sample_report() {
    nabfs::SelectionReport report;
    report.method = "nabfs";
    report.task = TaskKind::BinaryClassification;
    report.config.noise_count = 3;
    report.config.bootstrap_count = 50;
    report.config.alpha = 0.05;
    report.config.seed = 42;
    report.config.learner = nabfs::LogisticSpec{1e-4, 100, 1e-8};
    report.n_rows = 128;
    report.duration_seconds = 1.25;
    nabfs::FeatureDecision a;
    a.name = "age";
    a.mean_importance = 0.7;
    a.mean_noise_margin = 0.5;
    a.t_plus = 1270.5;
    a.effective_pairs = 50;
    a.p_raw = 1e-9;
    a.p_adjusted = 2e-9;
    a.selected = true;
    nabfs::FeatureDecision b;
    b.name = "noise_like";
    b.mean_importance = 0.02;
    b.mean_noise_margin = -0.1;
    b.t_plus = 300.0;
    b.effective_pairs = 49;
    b.p_raw = 0.8;
    b.p_adjusted = 1.0;
    b.selected = false;
    report.features = {a, b};
    return report;
}

void collect_keys(const nlohmann::json& j, const std::string& prefix,
                  std::set<std::string>& keys) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            keys.insert(prefix + key);
            collect_keys(value, prefix + key + ".", keys);
        }
    } else if (j.is_array() && !j.empty()) {
        collect_keys(j.front(), prefix + "[].", keys);
    }
}

}  // namespace

TEST_CASE("report: json round trip is field-for-field equal") {
    const auto report = sample_report();
    const auto text = nabfs::to_json_string(report);
    const auto back = nabfs::report_from_json(text);
    CHECK(back == report);
}

TEST_CASE("report: round trip preserves absent statistics") {
    auto report = sample_report();
    report.method = "naive";
    for (auto& row : report.features) {
        row.t_plus.reset();
        row.effective_pairs.reset();
        row.p_raw.reset();
        row.p_adjusted.reset();
    }
    const auto back = nabfs::report_from_json(nabfs::to_json_string(report));
    CHECK(back == report);
}

TEST_CASE("report: adjusted dominates raw in sample rows") {
    const auto report = sample_report();
    for (const auto& row : report.features) {
        REQUIRE(row.p_raw.has_value());
        REQUIRE(row.p_adjusted.has_value());
        CHECK(*row.p_adjusted >= *row.p_raw);
        CHECK(*row.p_adjusted <= 1.0);
    }
}

TEST_CASE("report: field names match the frozen schema") {
    const auto text = nabfs::to_json_string(sample_report(), 2,
                                            /*include_timing=*/false);
    const auto j = nlohmann::json::parse(text);
    std::set<std::string> keys;
    collect_keys(j, "", keys);

    std::ifstream golden(std::string(NABFS_TEST_DATA_DIR) +
                         "/golden_report_keys.txt");
    REQUIRE(golden.good());
    std::set<std::string> expected;
    std::string line;
    while (std::getline(golden, line)) {
        if (!line.empty()) expected.insert(line);
    }
    CHECK(keys == expected);
}

TEST_CASE("report: table lists every feature and the selected set") {
    const auto table = nabfs::to_table(sample_report());
    CHECK(table.find("age") != std::string::npos);
    CHECK(table.find("noise_like") != std::string::npos);
    CHECK(table.find("selected 1 of 2 features: age") != std::string::npos);

    auto empty = sample_report();
    for (auto& row : empty.features) row.selected = false;
    CHECK(nabfs::to_table(empty).find("no features selected") != std::string::npos);
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nabfs/config.hpp"
#include "nabfs/dataset.hpp"

namespace nabfs {

// Per-feature decision row. The test statistics are absent for the naive
// threshold baseline, which performs no inference.
struct FeatureDecision {
    std::string name;
    double mean_importance = 0.0;
    double mean_noise_margin = 0.0;  // mean paired difference vs noise max
    std::optional<double> t_plus;
    std::optional<int> effective_pairs;
    std::optional<double> p_raw;
    std::optional<double> p_adjusted;
    bool selected = false;

    bool operator==(const FeatureDecision&) const = default;
};

struct SelectionReport {
    std::string method;  // "nabfs" | "naive"
    TaskKind task = TaskKind::BinaryClassification;
    NabfsConfig config;  // effective configuration after defaults
    Eigen::Index n_rows = 0;
    std::vector<FeatureDecision> features;
    double duration_seconds = 0.0;

    std::vector<std::string> selected_names() const;

    bool operator==(const SelectionReport&) const = default;
};

// Machine-readable document (schema "nabfs.report.v1") with stable field
// names. include_timing=false omits duration_seconds so repeated runs with
// the same seed produce byte-identical documents.
std::string to_json_string(const SelectionReport& report, int indent = 2,
                           bool include_timing = true);
SelectionReport report_from_json(const std::string& text);

// Aligned human-readable table; excludes timing for reproducible output.
std::string to_table(const SelectionReport& report);

}  // namespace nabfs

#include "nabfs/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace nabfs {

namespace {

using Json = nlohmann::ordered_json;

Json learner_to_json(const LearnerSpec& spec) {
    Json j;
    if (const auto* logistic = std::get_if<LogisticSpec>(&spec)) {
        j["kind"] = "logistic";
        j["l2_penalty"] = logistic->l2_penalty;
        j["max_iter"] = logistic->max_iter;
        j["tol"] = logistic->tol;
    } else if (const auto* linear = std::get_if<LinearSpec>(&spec)) {
        j["kind"] = "linear";
        j["l2_penalty"] = linear->l2_penalty;
        j["max_iter"] = linear->max_iter;
        j["tol"] = linear->tol;
    } else {
        const auto& forest = std::get<ForestSpec>(spec);
        j["kind"] = "forest";
        j["n_trees"] = forest.n_trees;
        j["max_depth"] = forest.max_depth;
        j["min_leaf"] = forest.min_leaf;
        j["features_per_split"] = forest.features_per_split;
    }
    return j;
}

LearnerSpec learner_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "logistic") {
        LogisticSpec spec;
        spec.l2_penalty = j.at("l2_penalty").get<double>();
        spec.max_iter = j.at("max_iter").get<int>();
        spec.tol = j.at("tol").get<double>();
        return spec;
    }
    if (kind == "linear") {
        LinearSpec spec;
        spec.l2_penalty = j.at("l2_penalty").get<double>();
        spec.max_iter = j.at("max_iter").get<int>();
        spec.tol = j.at("tol").get<double>();
        return spec;
    }
    if (kind == "forest") {
        ForestSpec spec;
        spec.n_trees = j.at("n_trees").get<int>();
        spec.max_depth = j.at("max_depth").get<int>();
        spec.min_leaf = j.at("min_leaf").get<int>();
        spec.features_per_split = j.at("features_per_split").get<double>();
        return spec;
    }
    throw ValidationError("unknown learner kind '" + kind + "'");
}

TaskKind task_from_string(const std::string& text) {
    if (text == "binary_classification") return TaskKind::BinaryClassification;
    if (text == "regression") return TaskKind::Regression;
    throw ValidationError("unknown task '" + text + "'");
}

template <typename T>
Json optional_to_json(const std::optional<T>& value) {
    if (value.has_value()) return Json(*value);
    return Json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

std::string format_number(double v, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string to_json_string(const SelectionReport& report, int indent,
                           bool include_timing) {
    Json j;
    j["schema"] = "nabfs.report.v1";
    j["method"] = report.method;
    j["task"] = to_string(report.task);
    j["learner"] = learner_name(report.config.learner);
    Json cfg;
    cfg["noise_count"] = report.config.noise_count;
    cfg["bootstrap_count"] = report.config.bootstrap_count;
    cfg["alpha"] = report.config.alpha;
    cfg["noise_mean"] = report.config.noise_mean;
    cfg["noise_sd"] = report.config.noise_sd;
    cfg["seed"] = report.config.seed;
    cfg["exact_wsr_max_pairs"] = report.config.exact_wsr_max_pairs;
    cfg["learner"] = learner_to_json(report.config.learner);
    j["config"] = std::move(cfg);
    j["n_rows"] = static_cast<std::int64_t>(report.n_rows);

    Json rows = Json::array();
    for (const auto& row : report.features) {
        Json r;
        r["name"] = row.name;
        r["mean_importance"] = row.mean_importance;
        r["mean_noise_margin"] = row.mean_noise_margin;
        r["t_plus"] = optional_to_json(row.t_plus);
        r["effective_pairs"] = optional_to_json(row.effective_pairs);
        r["p_raw"] = optional_to_json(row.p_raw);
        r["p_adjusted"] = optional_to_json(row.p_adjusted);
        r["selected"] = row.selected;
        rows.push_back(std::move(r));
    }
    j["features"] = std::move(rows);
    j["selected"] = report.selected_names();
    if (include_timing) j["duration_seconds"] = report.duration_seconds;
    return j.dump(indent) + "\n";
}

SelectionReport report_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError(std::string("malformed report document: ") + err.what());
    }
    try {
        SelectionReport report;
        report.method = j.at("method").get<std::string>();
        report.task = task_from_string(j.at("task").get<std::string>());
        const Json& cfg = j.at("config");
        report.config.noise_count = cfg.at("noise_count").get<int>();
        report.config.bootstrap_count = cfg.at("bootstrap_count").get<int>();
        report.config.alpha = cfg.at("alpha").get<double>();
        report.config.noise_mean = cfg.at("noise_mean").get<double>();
        report.config.noise_sd = cfg.at("noise_sd").get<double>();
        report.config.seed = cfg.at("seed").get<std::uint64_t>();
        report.config.exact_wsr_max_pairs = cfg.at("exact_wsr_max_pairs").get<int>();
        report.config.learner = learner_from_json(cfg.at("learner"));
        report.n_rows = j.at("n_rows").get<std::int64_t>();
        for (const Json& r : j.at("features")) {
            FeatureDecision row;
            row.name = r.at("name").get<std::string>();
            row.mean_importance = r.at("mean_importance").get<double>();
            row.mean_noise_margin = r.at("mean_noise_margin").get<double>();
            row.t_plus = optional_from_json<double>(r.at("t_plus"));
            row.effective_pairs = optional_from_json<int>(r.at("effective_pairs"));
            row.p_raw = optional_from_json<double>(r.at("p_raw"));
            row.p_adjusted = optional_from_json<double>(r.at("p_adjusted"));
            row.selected = r.at("selected").get<bool>();
            report.features.push_back(std::move(row));
        }
        if (j.contains("duration_seconds")) {
            report.duration_seconds = j.at("duration_seconds").get<double>();
        }
        return report;
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError(std::string("incomplete report document: ") + err.what());
    }
}

std::string to_table(const SelectionReport& report) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"feature", "mean_imp", "margin", "t_plus", "pairs",
                     "p_raw", "p_adj", "selected"});
    for (const auto& row : report.features) {
        cells.push_back({
            row.name,
            format_number(row.mean_importance),
            format_number(row.mean_noise_margin),
            row.t_plus ? format_number(*row.t_plus) : "-",
            row.effective_pairs ? std::to_string(*row.effective_pairs) : "-",
            row.p_raw ? format_number(*row.p_raw, "%.4g") : "-",
            row.p_adjusted ? format_number(*row.p_adjusted, "%.4g") : "-",
            row.selected ? "yes" : "no",
        });
    }
    std::vector<std::size_t> widths(cells[0].size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }

    std::ostringstream out;
    out << "method: " << report.method
        << "   learner: " << learner_name(report.config.learner)
        << "   task: " << to_string(report.task) << "\n";
    out << "rows: " << report.n_rows
        << "   features: " << report.features.size()
        << "   noise probes: " << report.config.noise_count
        << "   bootstraps: " << report.config.bootstrap_count
        << "   alpha: " << format_number(report.config.alpha)
        << "   seed: " << report.config.seed << "\n\n";

    std::size_t total = 0;
    for (std::size_t c = 0; c < widths.size(); ++c) {
        total += widths[c] + (c + 1 < widths.size() ? 2 : 0);
    }
    for (std::size_t r = 0; r < cells.size(); ++r) {
        const auto& row = cells[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) {
                out << std::string(widths[c] - row[c].size() + 2, ' ');
            }
        }
        out << "\n";
        if (r == 0) out << std::string(total, '-') << "\n";
    }

    const auto selected = report.selected_names();
    out << "\n";
    if (selected.empty()) {
        out << "no features selected\n";
    } else {
        out << "selected " << selected.size() << " of "
            << report.features.size() << " features:";
        for (const auto& name : selected) out << " " << name;
        out << "\n";
    }
    return out.str();
}

}  // namespace nabfs

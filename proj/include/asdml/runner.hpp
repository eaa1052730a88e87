#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "asdml/config.hpp"
#include "asdml/metrics.hpp"

namespace asdml {

struct SeedResult {
    std::uint64_t seed = 0;
    nlohmann::ordered_json resolved_spec;  // hyperparameters actually used
    MetricReport report;
};

struct MeanMetrics {
    double accuracy = 0.0;
    double auc = 0.0;
    ClassMetrics no_class;
    ClassMetrics yes_class;
};

struct ModelResults {
    std::string name;
    std::string feature_space;  // "standardized" or "raw"
    std::vector<SeedResult> per_seed;
    MeanMetrics mean;
    // Predictions on the base seed's test rows, in post-shuffle order.
    std::vector<int> base_predictions;
};

struct RunMetadata {
    std::size_t rows_loaded = 0;
    std::size_t rows_dropped = 0;
    std::size_t rows_used = 0;
    std::size_t encoded_dim = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> feature_names;
    std::vector<int> base_test_labels;  // base seed, post-shuffle order
};

struct ReportBundle {
    ExperimentConfig config;
    RunMetadata meta;
    std::vector<ModelResults> classifiers;
    std::vector<ModelResults> kernels;
};

// Full pipeline: parse -> merge -> drop_missing -> encode -> per-seed
// split/standardize/fit/evaluate. Deterministic for a given config.
ReportBundle run_experiment(const ExperimentConfig& config);

// Versioned report document; embeds the config echo so a run can be
// reproduced from the report alone.
nlohmann::ordered_json report_to_json(const ReportBundle& bundle);

// Metric rows (Acc, AUC, Pre/Rec/F1 per class) x model columns, mean over
// seeds, rendered to 3 decimals.
std::string compare_table_csv(const std::vector<ModelResults>& results);
std::string compare_table_text(const std::vector<ModelResults>& results);

struct SampleComparison {
    std::vector<std::string> model_names;
    std::vector<int> actual;
    std::vector<std::vector<int>> predicted;  // [model][row]
};

// First n test rows of the base seed with actual and per-model predicted
// labels; n must not exceed the test size.
SampleComparison sample_comparison(const ReportBundle& bundle, std::size_t n);
std::string sample_comparison_csv(const SampleComparison& sample);

// Self-contained SVG with unit-square axes, the chance diagonal and one
// polyline + legend entry ("name (AUC = x.xxx)") per curve.
std::string roc_svg(const std::vector<std::pair<std::string, RocCurve>>& curves);

// Rebuilds the combined SVG from a serialized report document.
std::string roc_svg_from_report(const std::string& report_json_text);

// Two-column CSV (fpr,tpr) with a header line.
std::string roc_curve_csv(const RocCurve& curve);

// Writes report.json, table1.csv, table2.csv, roc_all.svg, roc_<name>.csv
// and sample_comparison.csv under out_dir (created if needed).
void write_report_files(const ReportBundle& bundle, const std::string& out_dir);

}  // namespace asdml

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "asdml/model.hpp"
#include "asdml/table.hpp"

namespace asdml {

struct DataSource {
    std::string path;
    std::optional<TableFormat> format;  // inferred from the extension when unset
    std::string schema_path;            // CSV sidecar
};

// Kernel choice with an optionally data-dependent gamma: when gamma is
// unset the RBF kernel uses 1/(d * mean feature variance) of the training
// split and the others use 1/d.
struct KernelConfig {
    std::string type = "rbf";  // linear | polynomial | rbf | sigmoid
    std::optional<double> gamma;
    int degree = 3;
    double coef0 = 0.0;

    KernelSpec resolve(const Matrix& train_features) const;
    nlohmann::ordered_json to_json() const;
    std::string display_name() const;
};

struct SvmConfig {
    double C = 1.0;
    KernelConfig kernel;
    double tol = 1e-3;
    double eps = 1e-5;
    int max_passes = 10;

    SvmSpec resolve(const Matrix& train_features) const;
};

using ClassifierConfig = std::variant<NaiveBayesSpec, KnnSpec, LogisticSpec, GradientBoostSpec,
                                      DecisionTreeSpec, SvmConfig, MlpSpec>;

std::string classifier_config_name(const ClassifierConfig& config);
ClassifierSpec resolve_classifier(const ClassifierConfig& config, const Matrix& train_features);

// True for learners that consume standardized features (kNN, SVM, LR, MLP);
// NB, DT and GB take the raw encoded features.
bool wants_standardized(const ClassifierConfig& config);

struct ExperimentConfig {
    std::vector<DataSource> data;
    double train_fraction = 0.7;
    std::uint64_t seed = 42;
    int repeat = 1;
    std::vector<ClassifierConfig> classifiers;  // default: all seven
    std::vector<KernelConfig> kernels;          // default: polynomial, rbf, sigmoid
    std::string out_dir = "out";
    std::vector<std::string> drop_columns = {"age_desc", "result"};
    int sample_rows = 10;
};

// Strict schema: unknown keys are rejected, ranges validated, defaults
// applied for absent optional keys.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Round-trippable echo of the fully-resolved config (auto gamma stays the
// symbolic string "scale").
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

}  // namespace asdml

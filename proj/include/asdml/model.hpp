#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "asdml/dataset.hpp"
#include "asdml/kernel.hpp"
#include "asdml/matrix.hpp"

namespace asdml {

// ---- hyperparameter specs -------------------------------------------------

struct NaiveBayesSpec {
    double alpha = 1.0;  // Laplace smoothing
};

struct KnnSpec {
    int k = 5;  // odd
};

struct LogisticSpec {
    double learning_rate = 0.1;
    double l2_lambda = 1e-4;
    int max_iters = 2000;
    double grad_tol = 1e-6;
};

struct GradientBoostSpec {
    int rounds = 100;
    int max_depth = 3;
    double shrinkage = 0.1;
};

struct DecisionTreeSpec {
    int max_depth = 10;
    int min_leaf = 2;
};

struct SvmSpec {
    double C = 1.0;
    KernelSpec kernel = RbfKernel{1.0};
    double tol = 1e-3;      // KKT violation tolerance
    double eps = 1e-5;      // minimal multiplier step
    int max_passes = 10;    // consecutive no-change passes before stopping
};

struct MlpSpec {
    int hidden_units = 16;
    double learning_rate = 0.01;
    int epochs = 200;
    std::uint64_t init_seed = 0;
};

using ClassifierSpec = std::variant<NaiveBayesSpec, KnnSpec, LogisticSpec, GradientBoostSpec,
                                    DecisionTreeSpec, SvmSpec, MlpSpec>;

// Short display names in the report column order: NB, kNN, LR, GB, SVM,
// DT, MLP.
std::string classifier_name(const ClassifierSpec& spec);

// ---- fitted models ----------------------------------------------------------

struct NaiveBayesModel {
    struct FeatureStats {
        bool bernoulli = true;
        // Indexed by class {0, 1}.
        double p_one[2] = {0.5, 0.5};   // Bernoulli P(f=1 | class)
        double mean[2] = {0.0, 0.0};    // Gaussian
        double var[2] = {1.0, 1.0};
    };
    double log_prior[2] = {0.0, 0.0};
    std::vector<FeatureStats> features;
};

struct KnnModel {
    int k = 5;
    Matrix train_features;
    std::vector<int> train_labels;
};

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    int iterations_run = 0;
    double final_grad_norm = 0.0;
};

// Flat binary tree; interior nodes carry (feature, threshold), leaves carry
// a score (positive fraction for classification, fitted value for the
// boosting regression trees).
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double score = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTreeModel {
    std::size_t dim = 0;
    std::vector<TreeNode> nodes;
};

struct GradientBoostModel {
    std::size_t dim = 0;
    double base_log_odds = 0.0;
    double shrinkage = 0.1;
    std::vector<std::vector<TreeNode>> trees;
};

struct SvmDiagnostics {
    bool converged = false;
    int passes = 0;
    long long steps = 0;
    int kkt_violations = 0;
    double dual_objective = 0.0;
};

struct SvmModel {
    std::vector<double> sv_coeff;  // alpha_i * y_i per support vector
    Matrix support_vectors;
    double bias = 0.0;
    KernelSpec kernel = RbfKernel{1.0};
    SvmDiagnostics diagnostics;
};

struct MlpModel {
    Matrix hidden_weights;               // h x d
    std::vector<double> hidden_bias;     // h
    std::vector<double> output_weights;  // h
    double output_bias = 0.0;
};

using TrainedModel = std::variant<NaiveBayesModel, KnnModel, LogisticModel, GradientBoostModel,
                                  DecisionTreeModel, SvmModel, MlpModel>;

std::string model_family(const TrainedModel& model);

struct Prediction {
    int label = 0;
    double score = 0.0;
};

// Real-valued score, higher means more likely class 1. Probabilistic
// families emit probabilities; the SVM emits the margin.
double score_point(const TrainedModel& model, std::span<const double> x);

// Label by strict threshold: score > 0.5 for probabilistic models,
// score > 0 for the SVM. Ties classify as 0.
Prediction predict(const TrainedModel& model, std::span<const double> x);

std::vector<Prediction> predict_all(const TrainedModel& model, const Matrix& X);

double decision_threshold(const TrainedModel& model);

// Input dimension the model expects.
std::size_t model_dim(const TrainedModel& model);

}  // namespace asdml

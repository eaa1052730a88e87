#pragma once

#include <vector>

#include "asdml/dataset.hpp"
#include "asdml/model.hpp"

namespace asdml {

// Bernoulli likelihoods with Laplace smoothing for 0/1-valued columns,
// Gaussian otherwise (variance floored at 1e-9). Requires both classes.
TrainedModel fit_naive_bayes(const Dataset& train, const NaiveBayesSpec& spec);

// Lazy model over the given features; Euclidean distance, ties broken by
// lower row index, score = positive fraction among the k nearest.
TrainedModel fit_knn(const Dataset& train, const KnnSpec& spec);

// Full-batch gradient descent on mean cross-entropy + (l2/2)|w|^2 from
// w = 0, b = 0; stops at max_iters or gradient inf-norm < grad_tol.
TrainedModel fit_logistic(const Dataset& train, const LogisticSpec& spec);

struct LogisticGradient {
    std::vector<double> grad_w;
    double grad_b = 0.0;
};

double logistic_loss(const std::vector<double>& w, double b, const Dataset& data,
                     double l2_lambda);
LogisticGradient logistic_gradient(const std::vector<double>& w, double b, const Dataset& data,
                                   double l2_lambda);

// Boosted regression trees on the negative gradient of logistic loss;
// leaf values by a Newton step, F0 = base-rate log-odds.
TrainedModel fit_gradient_boost(const Dataset& train, const GradientBoostSpec& spec);

// Mean logistic loss on `data` after each boosting round (index 0 =
// base score only).
std::vector<double> staged_losses(const GradientBoostModel& model, const Dataset& data);

// CART with Gini impurity; exhaustive scan over midpoints of sorted unique
// values, ties broken by lower feature index then lower threshold.
TrainedModel fit_decision_tree(const Dataset& train, const DecisionTreeSpec& spec);

double gini_impurity(std::size_t positives, std::size_t total);

// Soft-margin SMO. The returned result keeps the full multiplier vector
// for inspection; fit_svm converts it to the compact support-vector model.
struct SmoResult {
    std::vector<double> alpha;
    double bias = 0.0;
    SvmDiagnostics diagnostics;
};

SmoResult smo_train(const Dataset& train, const SvmSpec& spec);
TrainedModel fit_svm(const Dataset& train, const SvmSpec& spec);

// One hidden ReLU layer, sigmoid output, mean cross-entropy, full-batch
// gradient descent. Hidden weights start uniform in +-sqrt(6/(d+h)) from
// init_seed; output weights and all biases start at zero.
TrainedModel fit_mlp(const Dataset& train, const MlpSpec& spec);

struct MlpGradient {
    Matrix hidden_weights;
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;
    double output_bias = 0.0;
};

double mlp_loss(const MlpModel& model, const Dataset& data);
MlpGradient mlp_gradient(const MlpModel& model, const Dataset& data);

// Dispatch on the hyperparameter variant.
TrainedModel fit(const Dataset& train, const ClassifierSpec& spec);

}  // namespace asdml

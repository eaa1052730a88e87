#include "asdml/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asdml/kernel.hpp"
#include "math_util.hpp"

namespace asdml {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double nb_score(const NaiveBayesModel& m, std::span<const double> x) {
    double log_like[2] = {m.log_prior[0], m.log_prior[1]};
    for (std::size_t j = 0; j < m.features.size(); ++j) {
        const auto& f = m.features[j];
        for (int c = 0; c < 2; ++c) {
            if (f.bernoulli) {
                const double p = f.p_one[c];
                log_like[c] += x[j] > 0.5 ? std::log(p) : std::log1p(-p);
            } else {
                const double var = f.var[c];
                const double diff = x[j] - f.mean[c];
                log_like[c] += -0.5 * std::log(2.0 * M_PI * var) - diff * diff / (2.0 * var);
            }
        }
    }
    return detail::sigmoid(log_like[1] - log_like[0]);
}

double knn_score(const KnnModel& m, std::span<const double> x) {
    const std::size_t n = m.train_features.rows;
    // (squared distance, row index); ties resolved by lower index.
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = m.train_features.row(i);
        double sum = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double diff = row[j] - x[j];
            sum += diff * diff;
        }
        dist[i] = {sum, i};
    }
    const std::size_t k = static_cast<std::size_t>(m.k);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < k; ++i)
        positives += static_cast<std::size_t>(m.train_labels[dist[i].second]);
    return static_cast<double>(positives) / static_cast<double>(k);
}

double svm_score(const SvmModel& m, std::span<const double> x) {
    double sum = m.bias;
    for (std::size_t i = 0; i < m.support_vectors.rows; ++i)
        sum += m.sv_coeff[i] * kernel_eval(m.kernel, m.support_vectors.row(i), x);
    return sum;
}

double mlp_score(const MlpModel& m, std::span<const double> x) {
    const std::size_t h = m.hidden_weights.rows;
    double z2 = m.output_bias;
    for (std::size_t u = 0; u < h; ++u) {
        const auto w = m.hidden_weights.row(u);
        double z1 = m.hidden_bias[u];
        for (std::size_t j = 0; j < w.size(); ++j) z1 += w[j] * x[j];
        if (z1 > 0.0) z2 += m.output_weights[u] * z1;
    }
    return detail::sigmoid(z2);
}

}  // namespace

std::string classifier_name(const ClassifierSpec& spec) {
    return std::visit(overloaded{[](const NaiveBayesSpec&) { return std::string("NB"); },
                                 [](const KnnSpec&) { return std::string("kNN"); },
                                 [](const LogisticSpec&) { return std::string("LR"); },
                                 [](const GradientBoostSpec&) { return std::string("GB"); },
                                 [](const SvmSpec&) { return std::string("SVM"); },
                                 [](const DecisionTreeSpec&) { return std::string("DT"); },
                                 [](const MlpSpec&) { return std::string("MLP"); }},
                      spec);
}

std::string model_family(const TrainedModel& model) {
    return std::visit(overloaded{[](const NaiveBayesModel&) { return std::string("naive_bayes"); },
                                 [](const KnnModel&) { return std::string("knn"); },
                                 [](const LogisticModel&) { return std::string("logistic"); },
                                 [](const GradientBoostModel&) { return std::string("gradient_boost"); },
                                 [](const DecisionTreeModel&) { return std::string("decision_tree"); },
                                 [](const SvmModel&) { return std::string("svm"); },
                                 [](const MlpModel&) { return std::string("mlp"); }},
                      model);
}

std::size_t model_dim(const TrainedModel& model) {
    return std::visit(
        overloaded{[](const NaiveBayesModel& m) { return m.features.size(); },
                   [](const KnnModel& m) { return m.train_features.cols; },
                   [](const LogisticModel& m) { return m.weights.size(); },
                   [](const GradientBoostModel& m) { return m.dim; },
                   [](const DecisionTreeModel& m) { return m.dim; },
                   [](const SvmModel& m) { return m.support_vectors.cols; },
                   [](const MlpModel& m) { return m.hidden_weights.cols; }},
        model);
}

double decision_threshold(const TrainedModel& model) {
    return std::holds_alternative<SvmModel>(model) ? 0.0 : 0.5;
}

double score_point(const TrainedModel& model, std::span<const double> x) {
    if (x.size() != model_dim(model))
        throw std::invalid_argument("predict: input has dimension " + std::to_string(x.size()) +
                                    ", model expects " + std::to_string(model_dim(model)));
    return std::visit(
        overloaded{[&](const NaiveBayesModel& m) { return nb_score(m, x); },
                   [&](const KnnModel& m) { return knn_score(m, x); },
                   [&](const LogisticModel& m) {
                       double z = m.bias;
                       for (std::size_t j = 0; j < m.weights.size(); ++j) z += m.weights[j] * x[j];
                       return detail::sigmoid(z);
                   },
                   [&](const GradientBoostModel& m) {
                       double f = m.base_log_odds;
                       for (const auto& tree : m.trees)
                           f += m.shrinkage * detail::tree_eval(tree, x);
                       return detail::sigmoid(f);
                   },
                   [&](const DecisionTreeModel& m) { return detail::tree_eval(m.nodes, x); },
                   [&](const SvmModel& m) { return svm_score(m, x); },
                   [&](const MlpModel& m) { return mlp_score(m, x); }},
        model);
}

Prediction predict(const TrainedModel& model, std::span<const double> x) {
    const double score = score_point(model, x);
    return {score > decision_threshold(model) ? 1 : 0, score};
}

std::vector<Prediction> predict_all(const TrainedModel& model, const Matrix& X) {
    std::vector<Prediction> out;
    out.reserve(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i) out.push_back(predict(model, X.row(i)));
    return out;
}

}  // namespace asdml

#include <cmath>

#include "asdml/classifiers.hpp"
#include "asdml/errors.hpp"
#include "asdml/rng.hpp"
#include "math_util.hpp"

namespace asdml {

namespace {

struct Forward {
    Matrix z1;               // n x h, pre-activation
    std::vector<double> z2;  // n, output logit
};

Forward forward_pass(const MlpModel& m, const Dataset& data) {
    const std::size_t n = data.n(), h = m.hidden_weights.rows;
    Forward fw;
    fw.z1 = Matrix(n, h);
    fw.z2.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.features.row(i);
        double z2 = m.output_bias;
        for (std::size_t u = 0; u < h; ++u) {
            const auto w = m.hidden_weights.row(u);
            double z = m.hidden_bias[u];
            for (std::size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
            fw.z1(i, u) = z;
            if (z > 0.0) z2 += m.output_weights[u] * z;
        }
        fw.z2[i] = z2;
    }
    return fw;
}

}  // namespace

double mlp_loss(const MlpModel& model, const Dataset& data) {
    const auto fw = forward_pass(model, data);
    double loss = 0.0;
    for (std::size_t i = 0; i < data.n(); ++i)
        loss += detail::logit_loss(fw.z2[i], data.labels[i]);
    return loss / static_cast<double>(data.n());
}

MlpGradient mlp_gradient(const MlpModel& model, const Dataset& data) {
    const std::size_t n = data.n(), h = model.hidden_weights.rows,
                      d = model.hidden_weights.cols;
    const auto fw = forward_pass(model, data);

    MlpGradient g;
    g.hidden_weights = Matrix(h, d);
    g.hidden_bias.assign(h, 0.0);
    g.output_weights.assign(h, 0.0);
    g.output_bias = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.features.row(i);
        const double dz2 =
            (detail::sigmoid(fw.z2[i]) - static_cast<double>(data.labels[i])) /
            static_cast<double>(n);
        g.output_bias += dz2;
        for (std::size_t u = 0; u < h; ++u) {
            const double z1 = fw.z1(i, u);
            if (z1 > 0.0) g.output_weights[u] += dz2 * z1;
            // ReLU passes gradient only where the pre-activation is positive.
            const double dz1 = z1 > 0.0 ? dz2 * model.output_weights[u] : 0.0;
            if (dz1 != 0.0) {
                g.hidden_bias[u] += dz1;
                for (std::size_t j = 0; j < d; ++j) g.hidden_weights(u, j) += dz1 * x[j];
            }
        }
    }
    return g;
}

TrainedModel fit_mlp(const Dataset& train, const MlpSpec& spec) {
    if (train.n() == 0) throw TrainError("mlp: empty training set");
    if (spec.hidden_units < 1) throw TrainError("mlp: hidden_units must be >= 1");
    if (!(spec.learning_rate > 0)) throw TrainError("mlp: learning_rate must be > 0");
    if (spec.epochs < 0) throw TrainError("mlp: epochs must be >= 0");

    const std::size_t h = static_cast<std::size_t>(spec.hidden_units), d = train.dim();
    MlpModel model;
    model.hidden_weights = Matrix(h, d);
    model.hidden_bias.assign(h, 0.0);
    model.output_weights.assign(h, 0.0);
    model.output_bias = 0.0;

    // Uniform +-sqrt(6/(d+h)), drawn row by row from the seeded generator.
    const double range = std::sqrt(6.0 / static_cast<double>(d + h));
    SplitMix64 rng(spec.init_seed);
    for (std::size_t u = 0; u < h; ++u)
        for (std::size_t j = 0; j < d; ++j)
            model.hidden_weights(u, j) = (2.0 * rng.next_double() - 1.0) * range;

    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        const auto g = mlp_gradient(model, train);
        for (std::size_t u = 0; u < h; ++u) {
            for (std::size_t j = 0; j < d; ++j)
                model.hidden_weights(u, j) -= spec.learning_rate * g.hidden_weights(u, j);
            model.hidden_bias[u] -= spec.learning_rate * g.hidden_bias[u];
            model.output_weights[u] -= spec.learning_rate * g.output_weights[u];
        }
        model.output_bias -= spec.learning_rate * g.output_bias;
        if (!std::isfinite(model.output_bias)) throw TrainError("mlp: loss diverged");
    }
    if (!std::isfinite(mlp_loss(model, train))) throw TrainError("mlp: loss diverged");
    return model;
}

TrainedModel fit(const Dataset& train, const ClassifierSpec& spec) {
    return std::visit(
        [&](const auto& s) -> TrainedModel {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, NaiveBayesSpec>) return fit_naive_bayes(train, s);
            else if constexpr (std::is_same_v<S, KnnSpec>) return fit_knn(train, s);
            else if constexpr (std::is_same_v<S, LogisticSpec>) return fit_logistic(train, s);
            else if constexpr (std::is_same_v<S, GradientBoostSpec>)
                return fit_gradient_boost(train, s);
            else if constexpr (std::is_same_v<S, DecisionTreeSpec>)
                return fit_decision_tree(train, s);
            else if constexpr (std::is_same_v<S, SvmSpec>) return fit_svm(train, s);
            else return fit_mlp(train, s);
        },
        spec);
}

}  // namespace asdml

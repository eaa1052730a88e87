#include <cmath>

#include "asdml/classifiers.hpp"
#include "asdml/errors.hpp"
#include "math_util.hpp"

namespace asdml {

double logistic_loss(const std::vector<double>& w, double b, const Dataset& data,
                     double l2_lambda) {
    const std::size_t n = data.n();
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = b;
        for (std::size_t j = 0; j < data.dim(); ++j) z += w[j] * data.features(i, j);
        loss += detail::logit_loss(z, data.labels[i]);
    }
    loss /= static_cast<double>(n);
    double reg = 0.0;
    for (const double wj : w) reg += wj * wj;
    return loss + 0.5 * l2_lambda * reg;
}

LogisticGradient logistic_gradient(const std::vector<double>& w, double b, const Dataset& data,
                                   double l2_lambda) {
    const std::size_t n = data.n();
    LogisticGradient g;
    g.grad_w.assign(data.dim(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double z = b;
        for (std::size_t j = 0; j < data.dim(); ++j) z += w[j] * data.features(i, j);
        const double err = detail::sigmoid(z) - static_cast<double>(data.labels[i]);
        for (std::size_t j = 0; j < data.dim(); ++j) g.grad_w[j] += err * data.features(i, j);
        g.grad_b += err;
    }
    for (std::size_t j = 0; j < data.dim(); ++j)
        g.grad_w[j] = g.grad_w[j] / static_cast<double>(n) + l2_lambda * w[j];
    g.grad_b /= static_cast<double>(n);
    return g;
}

TrainedModel fit_logistic(const Dataset& train, const LogisticSpec& spec) {
    if (train.n() == 0) throw TrainError("logistic: empty training set");
    if (!(spec.learning_rate > 0)) throw TrainError("logistic: learning_rate must be > 0");
    if (spec.l2_lambda < 0) throw TrainError("logistic: l2_lambda must be >= 0");
    if (spec.max_iters < 0) throw TrainError("logistic: max_iters must be >= 0");

    LogisticModel model;
    model.weights.assign(train.dim(), 0.0);
    model.bias = 0.0;

    double grad_norm = 0.0;
    int iter = 0;
    for (; iter < spec.max_iters; ++iter) {
        const auto g = logistic_gradient(model.weights, model.bias, train, spec.l2_lambda);
        grad_norm = std::abs(g.grad_b);
        for (const double gw : g.grad_w) grad_norm = std::max(grad_norm, std::abs(gw));
        if (grad_norm < spec.grad_tol) break;
        for (std::size_t j = 0; j < model.weights.size(); ++j)
            model.weights[j] -= spec.learning_rate * g.grad_w[j];
        model.bias -= spec.learning_rate * g.grad_b;
        if (!std::isfinite(model.bias))
            throw TrainError("logistic: loss diverged (learning_rate too large)");
    }
    const double loss = logistic_loss(model.weights, model.bias, train, spec.l2_lambda);
    if (!std::isfinite(loss))
        throw TrainError("logistic: loss diverged (learning_rate too large)");
    model.iterations_run = iter;
    model.final_grad_norm = grad_norm;
    return model;
}

}  // namespace asdml

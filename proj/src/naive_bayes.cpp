#include <cmath>

#include "asdml/classifiers.hpp"
#include "asdml/errors.hpp"

namespace asdml {

TrainedModel fit_naive_bayes(const Dataset& train, const NaiveBayesSpec& spec) {
    if (!(spec.alpha > 0)) throw TrainError("naive bayes: alpha must be > 0");
    const std::size_t n = train.n();
    if (n == 0) throw TrainError("naive bayes: empty training set");

    std::size_t count[2] = {0, 0};
    for (const int y : train.labels) ++count[y];
    if (count[0] == 0 || count[1] == 0)
        throw TrainError("naive bayes: training data contains a single class");

    NaiveBayesModel model;
    model.log_prior[0] = std::log(static_cast<double>(count[0]) / static_cast<double>(n));
    model.log_prior[1] = std::log(static_cast<double>(count[1]) / static_cast<double>(n));
    model.features.resize(train.dim());

    for (std::size_t j = 0; j < train.dim(); ++j) {
        auto& f = model.features[j];
        f.bernoulli = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = train.features(i, j);
            if (v != 0.0 && v != 1.0) {
                f.bernoulli = false;
                break;
            }
        }
        if (f.bernoulli) {
            double ones[2] = {0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i)
                if (train.features(i, j) == 1.0) ones[train.labels[i]] += 1.0;
            for (int c = 0; c < 2; ++c)
                f.p_one[c] = (ones[c] + spec.alpha) /
                             (static_cast<double>(count[c]) + 2.0 * spec.alpha);
        } else {
            double sum[2] = {0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) sum[train.labels[i]] += train.features(i, j);
            for (int c = 0; c < 2; ++c) f.mean[c] = sum[c] / static_cast<double>(count[c]);
            double sq[2] = {0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = train.features(i, j) - f.mean[train.labels[i]];
                sq[train.labels[i]] += diff * diff;
            }
            for (int c = 0; c < 2; ++c)
                f.var[c] = std::max(sq[c] / static_cast<double>(count[c]), 1e-9);
        }
    }
    return model;
}

}  // namespace asdml

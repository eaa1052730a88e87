#include "asdml/classifiers.hpp"
#include "asdml/errors.hpp"

namespace asdml {

TrainedModel fit_knn(const Dataset& train, const KnnSpec& spec) {
    if (spec.k < 1 || spec.k % 2 == 0)
        throw TrainError("knn: k must be an odd positive integer");
    if (static_cast<std::size_t>(spec.k) > train.n())
        throw TrainError("knn: k=" + std::to_string(spec.k) + " exceeds training size " +
                         std::to_string(train.n()));
    KnnModel model;
    model.k = spec.k;
    model.train_features = train.features;
    model.train_labels = train.labels;
    return model;
}

}  // namespace asdml

#pragma once

#include <string>
#include <vector>

#include "asdml/matrix.hpp"

namespace asdml {

// Fully numeric design matrix with binary labels (1 == class "YES").
struct Dataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;

    std::size_t n() const { return features.rows; }
    std::size_t dim() const { return features.cols; }

    bool operator==(const Dataset&) const = default;
};

// Per-column training statistics; std 0 is recorded as-is and the
// transform maps such columns to all zero.
struct ScalerParams {
    std::vector<double> means;
    std::vector<double> stds;

    bool operator==(const ScalerParams&) const = default;
};

}  // namespace asdml

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "asdml/model.hpp"

namespace asdml::detail {

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
inline double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// Cross-entropy of a logit against a 0/1 label.
inline double logit_loss(double z, int y) { return softplus(z) - (y ? z : 0.0); }

inline double tree_eval(const std::vector<TreeNode>& nodes, std::span<const double> x) {
    int i = 0;
    while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
        const TreeNode& node = nodes[static_cast<std::size_t>(i)];
        i = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(i)].score;
}

}  // namespace asdml::detail

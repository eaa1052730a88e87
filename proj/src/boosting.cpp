#include <algorithm>
#include <cmath>

#include "asdml/classifiers.hpp"
#include "asdml/errors.hpp"
#include "math_util.hpp"

namespace asdml {

namespace {

double midpoint(double lo, double hi) {
    const double t = (lo + hi) / 2.0;
    return t >= hi ? lo : t;
}

constexpr double kHessianFloor = 1e-12;

// Least-squares regression tree on the residuals with Newton leaf values
// (sum residual / sum hessian).
class RegressionTreeBuilder {
public:
    RegressionTreeBuilder(const Matrix& X, const std::vector<double>& residual,
                          const std::vector<double>& hessian, int max_depth)
        : X_(X), residual_(residual), hessian_(hessian), max_depth_(max_depth) {}

    std::vector<TreeNode> build() {
        std::vector<std::size_t> indices(X_.rows);
        for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
        grow(indices, 0);
        return std::move(nodes_);
    }

private:
    int grow(std::vector<std::size_t>& indices, int depth) {
        double sum_r = 0.0, sum_h = 0.0;
        for (const std::size_t i : indices) {
            sum_r += residual_[i];
            sum_h += hessian_[i];
        }
        const int node_id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_.back().score = sum_r / std::max(sum_h, kHessianFloor);

        if (depth >= max_depth_ || indices.size() < 2) return node_id;

        int best_feature = -1;
        double best_threshold = 0.0, best_gain = 0.0;
        bool found = false;
        const std::size_t total = indices.size();
        std::vector<std::pair<double, double>> column(total);  // (value, residual)
        for (std::size_t f = 0; f < X_.cols; ++f) {
            for (std::size_t i = 0; i < total; ++i)
                column[i] = {X_(indices[i], f), residual_[indices[i]]};
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double total_r = 0.0;
            for (const auto& [v, r] : column) total_r += r;
            double left_r = 0.0;
            for (std::size_t k = 1; k < total; ++k) {
                left_r += column[k - 1].second;
                if (column[k - 1].first == column[k].first) continue;
                const double right_r = total_r - left_r;
                // Squared-error reduction, up to the constant parent term.
                const double gain = left_r * left_r / static_cast<double>(k) +
                                    right_r * right_r / static_cast<double>(total - k);
                if (!found || gain > best_gain) {
                    found = true;
                    best_feature = static_cast<int>(f);
                    best_threshold = midpoint(column[k - 1].first, column[k].first);
                    best_gain = gain;
                }
            }
        }
        if (!found) return node_id;

        std::vector<std::size_t> left, right;
        for (const std::size_t i : indices)
            (X_(i, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right)
                .push_back(i);
        indices.clear();
        indices.shrink_to_fit();

        const int left_id = grow(left, depth + 1);
        const int right_id = grow(right, depth + 1);
        auto& node = nodes_[static_cast<std::size_t>(node_id)];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left_id;
        node.right = right_id;
        return node_id;
    }

    const Matrix& X_;
    const std::vector<double>& residual_;
    const std::vector<double>& hessian_;
    int max_depth_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

TrainedModel fit_gradient_boost(const Dataset& train, const GradientBoostSpec& spec) {
    const std::size_t n = train.n();
    if (n == 0) throw TrainError("gradient boost: empty training set");
    if (spec.rounds < 0) throw TrainError("gradient boost: rounds must be >= 0");
    if (spec.max_depth < 0) throw TrainError("gradient boost: max_depth must be >= 0");
    if (!(spec.shrinkage > 0)) throw TrainError("gradient boost: shrinkage must be > 0");

    std::size_t positives = 0;
    for (const int y : train.labels) positives += static_cast<std::size_t>(y);
    if (positives == 0 || positives == n)
        throw TrainError("gradient boost: training data contains a single class");

    const double base_rate = static_cast<double>(positives) / static_cast<double>(n);
    GradientBoostModel model;
    model.dim = train.dim();
    model.shrinkage = spec.shrinkage;
    model.base_log_odds = std::log(base_rate / (1.0 - base_rate));

    std::vector<double> f(n, model.base_log_odds);
    std::vector<double> residual(n), hessian(n);
    for (int round = 0; round < spec.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = detail::sigmoid(f[i]);
            residual[i] = static_cast<double>(train.labels[i]) - p;
            hessian[i] = p * (1.0 - p);
        }
        auto tree =
            RegressionTreeBuilder(train.features, residual, hessian, spec.max_depth).build();
        for (std::size_t i = 0; i < n; ++i)
            f[i] += spec.shrinkage * detail::tree_eval(tree, train.features.row(i));
        model.trees.push_back(std::move(tree));
    }
    return model;
}

std::vector<double> staged_losses(const GradientBoostModel& model, const Dataset& data) {
    const std::size_t n = data.n();
    std::vector<double> f(n, model.base_log_odds);
    auto mean_loss = [&] {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) loss += detail::logit_loss(f[i], data.labels[i]);
        return loss / static_cast<double>(n);
    };
    std::vector<double> losses;
    losses.reserve(model.trees.size() + 1);
    losses.push_back(mean_loss());
    for (const auto& tree : model.trees) {
        for (std::size_t i = 0; i < n; ++i)
            f[i] += model.shrinkage * detail::tree_eval(tree, data.features.row(i));
        losses.push_back(mean_loss());
    }
    return losses;
}

}  // namespace asdml

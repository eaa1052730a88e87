#include <algorithm>
#include <cmath>

#include "asdml/classifiers.hpp"
#include "asdml/errors.hpp"

namespace asdml {

double gini_impurity(std::size_t positives, std::size_t total) {
    if (total == 0) return 0.0;
    const double p1 = static_cast<double>(positives) / static_cast<double>(total);
    const double p0 = 1.0 - p1;
    return 1.0 - p1 * p1 - p0 * p0;
}

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double weighted_impurity = 0.0;
};

// Threshold at the midpoint of two adjacent distinct values, nudged down to
// the lower value when rounding lands on the upper one so that `x <=
// threshold` routes exactly the left block.
double midpoint(double lo, double hi) {
    const double t = (lo + hi) / 2.0;
    return t >= hi ? lo : t;
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const DecisionTreeSpec& spec) : data_(data), spec_(spec) {}

    std::vector<TreeNode> build() {
        std::vector<std::size_t> indices(data_.n());
        for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
        grow(indices, 0);
        return std::move(nodes_);
    }

private:
    int grow(std::vector<std::size_t>& indices, int depth) {
        const std::size_t total = indices.size();
        std::size_t positives = 0;
        for (const std::size_t i : indices) positives += static_cast<std::size_t>(data_.labels[i]);

        const int node_id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_.back().score = static_cast<double>(positives) / static_cast<double>(total);

        const bool pure = positives == 0 || positives == total;
        const std::size_t min_leaf = static_cast<std::size_t>(spec_.min_leaf);
        if (pure || depth >= spec_.max_depth || total < 2 * min_leaf) return node_id;

        const auto choice = best_split(indices, min_leaf);
        if (!choice.found) return node_id;

        std::vector<std::size_t> left, right;
        for (const std::size_t i : indices)
            (data_.features(i, static_cast<std::size_t>(choice.feature)) <= choice.threshold
                 ? left
                 : right)
                .push_back(i);
        indices.clear();
        indices.shrink_to_fit();

        const int left_id = grow(left, depth + 1);
        const int right_id = grow(right, depth + 1);
        nodes_[static_cast<std::size_t>(node_id)].feature = choice.feature;
        nodes_[static_cast<std::size_t>(node_id)].threshold = choice.threshold;
        nodes_[static_cast<std::size_t>(node_id)].left = left_id;
        nodes_[static_cast<std::size_t>(node_id)].right = right_id;
        return node_id;
    }

    SplitChoice best_split(const std::vector<std::size_t>& indices, std::size_t min_leaf) const {
        const std::size_t total = indices.size();
        SplitChoice best;
        std::vector<std::pair<double, int>> column(total);  // (value, label)
        for (std::size_t f = 0; f < data_.dim(); ++f) {
            for (std::size_t i = 0; i < total; ++i)
                column[i] = {data_.features(indices[i], f), data_.labels[indices[i]]};
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::size_t left_pos = 0, total_pos = 0;
            for (const auto& [v, y] : column) total_pos += static_cast<std::size_t>(y);
            for (std::size_t k = 1; k < total; ++k) {
                left_pos += static_cast<std::size_t>(column[k - 1].second);
                if (column[k - 1].first == column[k].first) continue;
                if (k < min_leaf || total - k < min_leaf) continue;
                const double weighted =
                    (static_cast<double>(k) * gini_impurity(left_pos, k) +
                     static_cast<double>(total - k) * gini_impurity(total_pos - left_pos, total - k)) /
                    static_cast<double>(total);
                // Strict < keeps the lowest feature index and threshold on ties.
                if (!best.found || weighted < best.weighted_impurity) {
                    best.found = true;
                    best.feature = static_cast<int>(f);
                    best.threshold = midpoint(column[k - 1].first, column[k].first);
                    best.weighted_impurity = weighted;
                }
            }
        }
        return best;
    }

    const Dataset& data_;
    const DecisionTreeSpec& spec_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

TrainedModel fit_decision_tree(const Dataset& train, const DecisionTreeSpec& spec) {
    if (train.n() == 0) throw TrainError("decision tree: empty training set");
    if (spec.max_depth < 0) throw TrainError("decision tree: max_depth must be >= 0");
    if (spec.min_leaf < 1) throw TrainError("decision tree: min_leaf must be >= 1");
    DecisionTreeModel model;
    model.dim = train.dim();
    model.nodes = TreeBuilder(train, spec).build();
    return model;
}

}  // namespace asdml

#include <doctest.h>

#include <set>

#include "asdml/classifiers.hpp"
#include "asdml/rng.hpp"
#include "test_util.hpp"

using namespace asdml;
using test_util::make_dataset;
using test_util::xor_dataset;

TEST_CASE("gini impurity values") {
    CHECK(gini_impurity(2, 4) == doctest::Approx(0.5));
    CHECK(gini_impurity(0, 4) == 0.0);
    CHECK(gini_impurity(4, 4) == 0.0);
    CHECK(gini_impurity(1, 4) == doctest::Approx(0.375));
}

TEST_CASE("pure node becomes a single leaf with score 1") {
    const Dataset ds = make_dataset({{0}, {1}, {2}}, {1, 1, 1});
    const auto model = std::get<DecisionTreeModel>(fit_decision_tree(ds, {10, 1}));
    REQUIRE(model.nodes.size() == 1);
    CHECK(model.nodes[0].is_leaf());
    CHECK(model.nodes[0].score == 1.0);
}

TEST_CASE("xor is solved at depth two") {
    const Dataset ds = xor_dataset();
    const TrainedModel model = fit_decision_tree(ds, {2, 1});
    for (std::size_t i = 0; i < ds.n(); ++i)
        CHECK(predict(model, ds.features.row(i)).label == ds.labels[i]);
}

TEST_CASE("max_depth zero forces a single leaf") {
    const Dataset ds = xor_dataset();
    const auto model = std::get<DecisionTreeModel>(fit_decision_tree(ds, {0, 1}));
    REQUIRE(model.nodes.size() == 1);
    CHECK(model.nodes[0].score == 0.5);
}

TEST_CASE("min_leaf blocks splits that would create small leaves") {
    const Dataset ds = make_dataset({{0}, {1}, {2}, {3}}, {0, 0, 1, 1});
    // min_leaf = 3 cannot be satisfied by any split of 4 rows.
    const auto model = std::get<DecisionTreeModel>(fit_decision_tree(ds, {5, 3}));
    REQUIRE(model.nodes.size() == 1);
}

TEST_CASE("depth never exceeds max_depth") {
    SplitMix64 rng(401);
    for (int iter = 0; iter < 10; ++iter) {
        const std::size_t n = 20 + rng.next_below(30);
        std::vector<std::vector<double>> rows(n, std::vector<double>(3));
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& v : rows[i]) v = rng.next_double();
            labels[i] = static_cast<int>(rng.next_below(2));
        }
        const int max_depth = 1 + static_cast<int>(rng.next_below(4));
        const auto model = std::get<DecisionTreeModel>(
            fit_decision_tree(make_dataset(rows, labels), {max_depth, 1}));

        // Walk the flat tree measuring depths.
        struct Frame {
            int node;
            int depth;
        };
        std::vector<Frame> stack = {{0, 0}};
        while (!stack.empty()) {
            const Frame f = stack.back();
            stack.pop_back();
            CHECK(f.depth <= max_depth);
            const auto& node = model.nodes[static_cast<std::size_t>(f.node)];
            if (!node.is_leaf()) {
                stack.push_back({node.left, f.depth + 1});
                stack.push_back({node.right, f.depth + 1});
            }
        }
    }
}

TEST_CASE("unbounded depth with distinct rows reaches training accuracy 1") {
    SplitMix64 rng(409);
    for (int iter = 0; iter < 10; ++iter) {
        const std::size_t n = 10 + rng.next_below(40);
        std::set<std::pair<double, double>> seen;
        std::vector<std::vector<double>> rows;
        std::vector<int> labels;
        while (rows.size() < n) {
            const double a = rng.next_double(), b = rng.next_double();
            if (!seen.insert({a, b}).second) continue;
            rows.push_back({a, b});
            labels.push_back(static_cast<int>(rng.next_below(2)));
        }
        const Dataset ds = make_dataset(rows, labels);
        const TrainedModel model = fit_decision_tree(ds, {1000, 1});
        for (std::size_t i = 0; i < n; ++i)
            CHECK(predict(model, ds.features.row(i)).label == ds.labels[i]);
    }
}

TEST_CASE("leaf scores are positive fractions") {
    const Dataset ds = make_dataset({{0}, {1}, {2}, {3}}, {0, 1, 1, 1});
    const auto model = std::get<DecisionTreeModel>(fit_decision_tree(ds, {1, 1}));
    REQUIRE(model.nodes.size() == 3);
    // Root splits between 0 and 1: left leaf pure 0, right leaf pure 1.
    const auto& root = model.nodes[0];
    CHECK(root.feature == 0);
    CHECK(model.nodes[static_cast<std::size_t>(root.left)].score == 0.0);
    CHECK(model.nodes[static_cast<std::size_t>(root.right)].score == 1.0);
}

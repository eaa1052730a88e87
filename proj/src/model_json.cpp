#include "asdml/model_json.hpp"

#include <json.hpp>

#include "asdml/errors.hpp"

namespace asdml {

namespace {

using json = nlohmann::ordered_json;

constexpr int kModelVersion = 1;

json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.data = j.at("data").get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols) throw DataError("model json: matrix size mismatch");
    return m;
}

json kernel_to_json(const KernelSpec& spec) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, LinearKernel>) {
                return json{{"type", "linear"}};
            } else if constexpr (std::is_same_v<K, PolynomialKernel>) {
                return json{{"type", "polynomial"},
                            {"degree", k.degree},
                            {"gamma", k.gamma},
                            {"coef0", k.coef0}};
            } else if constexpr (std::is_same_v<K, RbfKernel>) {
                return json{{"type", "rbf"}, {"gamma", k.gamma}};
            } else {
                return json{{"type", "sigmoid"}, {"gamma", k.gamma}, {"coef0", k.coef0}};
            }
        },
        spec);
}

KernelSpec kernel_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "linear") return LinearKernel{};
    if (type == "polynomial")
        return PolynomialKernel{j.at("degree").get<int>(), j.at("gamma").get<double>(),
                                j.at("coef0").get<double>()};
    if (type == "rbf") return RbfKernel{j.at("gamma").get<double>()};
    if (type == "sigmoid")
        return SigmoidKernel{j.at("gamma").get<double>(), j.at("coef0").get<double>()};
    throw DataError("model json: unknown kernel type '" + type + "'");
}

json trees_to_json(const std::vector<TreeNode>& nodes) {
    json arr = json::array();
    for (const auto& n : nodes)
        arr.push_back(json{{"feature", n.feature},
                           {"threshold", n.threshold},
                           {"left", n.left},
                           {"right", n.right},
                           {"score", n.score}});
    return arr;
}

std::vector<TreeNode> trees_from_json(const json& arr) {
    std::vector<TreeNode> nodes;
    for (const auto& j : arr) {
        TreeNode n;
        n.feature = j.at("feature").get<int>();
        n.threshold = j.at("threshold").get<double>();
        n.left = j.at("left").get<int>();
        n.right = j.at("right").get<int>();
        n.score = j.at("score").get<double>();
        nodes.push_back(n);
    }
    return nodes;
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
    json j;
    j["version"] = kModelVersion;
    j["family"] = model_family(model);
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, NaiveBayesModel>) {
                j["log_prior"] = {m.log_prior[0], m.log_prior[1]};
                json feats = json::array();
                for (const auto& f : m.features)
                    feats.push_back(json{{"bernoulli", f.bernoulli},
                                         {"p_one", {f.p_one[0], f.p_one[1]}},
                                         {"mean", {f.mean[0], f.mean[1]}},
                                         {"var", {f.var[0], f.var[1]}}});
                j["features"] = std::move(feats);
            } else if constexpr (std::is_same_v<M, KnnModel>) {
                j["k"] = m.k;
                j["train_features"] = matrix_to_json(m.train_features);
                j["train_labels"] = m.train_labels;
            } else if constexpr (std::is_same_v<M, LogisticModel>) {
                j["weights"] = m.weights;
                j["bias"] = m.bias;
                j["iterations_run"] = m.iterations_run;
                j["final_grad_norm"] = m.final_grad_norm;
            } else if constexpr (std::is_same_v<M, GradientBoostModel>) {
                j["dim"] = m.dim;
                j["base_log_odds"] = m.base_log_odds;
                j["shrinkage"] = m.shrinkage;
                json trees = json::array();
                for (const auto& t : m.trees) trees.push_back(trees_to_json(t));
                j["trees"] = std::move(trees);
            } else if constexpr (std::is_same_v<M, DecisionTreeModel>) {
                j["dim"] = m.dim;
                j["nodes"] = trees_to_json(m.nodes);
            } else if constexpr (std::is_same_v<M, SvmModel>) {
                j["sv_coeff"] = m.sv_coeff;
                j["support_vectors"] = matrix_to_json(m.support_vectors);
                j["bias"] = m.bias;
                j["kernel"] = kernel_to_json(m.kernel);
                j["diagnostics"] = json{{"converged", m.diagnostics.converged},
                                        {"passes", m.diagnostics.passes},
                                        {"steps", m.diagnostics.steps},
                                        {"kkt_violations", m.diagnostics.kkt_violations},
                                        {"dual_objective", m.diagnostics.dual_objective}};
            } else if constexpr (std::is_same_v<M, MlpModel>) {
                j["hidden_weights"] = matrix_to_json(m.hidden_weights);
                j["hidden_bias"] = m.hidden_bias;
                j["output_weights"] = m.output_weights;
                j["output_bias"] = m.output_bias;
            }
        },
        model);
    return j.dump();
}

TrainedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("model json: ") + e.what());
    }
    try {
        if (j.at("version").get<int>() != kModelVersion)
            throw DataError("model json: unsupported version");
        const std::string family = j.at("family").get<std::string>();
        if (family == "naive_bayes") {
            NaiveBayesModel m;
            m.log_prior[0] = j.at("log_prior").at(0).get<double>();
            m.log_prior[1] = j.at("log_prior").at(1).get<double>();
            for (const auto& fj : j.at("features")) {
                NaiveBayesModel::FeatureStats f;
                f.bernoulli = fj.at("bernoulli").get<bool>();
                for (int c = 0; c < 2; ++c) {
                    f.p_one[c] = fj.at("p_one").at(c).get<double>();
                    f.mean[c] = fj.at("mean").at(c).get<double>();
                    f.var[c] = fj.at("var").at(c).get<double>();
                }
                m.features.push_back(f);
            }
            return m;
        }
        if (family == "knn") {
            KnnModel m;
            m.k = j.at("k").get<int>();
            m.train_features = matrix_from_json(j.at("train_features"));
            m.train_labels = j.at("train_labels").get<std::vector<int>>();
            return m;
        }
        if (family == "logistic") {
            LogisticModel m;
            m.weights = j.at("weights").get<std::vector<double>>();
            m.bias = j.at("bias").get<double>();
            m.iterations_run = j.at("iterations_run").get<int>();
            m.final_grad_norm = j.at("final_grad_norm").get<double>();
            return m;
        }
        if (family == "gradient_boost") {
            GradientBoostModel m;
            m.dim = j.at("dim").get<std::size_t>();
            m.base_log_odds = j.at("base_log_odds").get<double>();
            m.shrinkage = j.at("shrinkage").get<double>();
            for (const auto& t : j.at("trees")) m.trees.push_back(trees_from_json(t));
            return m;
        }
        if (family == "decision_tree") {
            DecisionTreeModel m;
            m.dim = j.at("dim").get<std::size_t>();
            m.nodes = trees_from_json(j.at("nodes"));
            return m;
        }
        if (family == "svm") {
            SvmModel m;
            m.sv_coeff = j.at("sv_coeff").get<std::vector<double>>();
            m.support_vectors = matrix_from_json(j.at("support_vectors"));
            m.bias = j.at("bias").get<double>();
            m.kernel = kernel_from_json(j.at("kernel"));
            const auto& dj = j.at("diagnostics");
            m.diagnostics.converged = dj.at("converged").get<bool>();
            m.diagnostics.passes = dj.at("passes").get<int>();
            m.diagnostics.steps = dj.at("steps").get<long long>();
            m.diagnostics.kkt_violations = dj.at("kkt_violations").get<int>();
            m.diagnostics.dual_objective = dj.at("dual_objective").get<double>();
            return m;
        }
        if (family == "mlp") {
            MlpModel m;
            m.hidden_weights = matrix_from_json(j.at("hidden_weights"));
            m.hidden_bias = j.at("hidden_bias").get<std::vector<double>>();
            m.output_weights = j.at("output_weights").get<std::vector<double>>();
            m.output_bias = j.at("output_bias").get<double>();
            return m;
        }
        throw DataError("model json: unknown family '" + family + "'");
    } catch (const json::exception& e) {
        throw DataError(std::string("model json: ") + e.what());
    }
}

}  // namespace asdml

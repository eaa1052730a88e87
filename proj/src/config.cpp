#include "asdml/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "asdml/errors.hpp"
#include "asdml/kernel.hpp"

namespace asdml {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& ctx) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ConfigError(ctx + ": unknown key \"" + key + "\"");
}

double require_number(const json& j, const std::string& ctx) {
    if (!j.is_number()) throw ConfigError(ctx + ": expected a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw ConfigError(ctx + ": expected an integer");
    return j.get<int>();
}

KernelConfig parse_kernel(const json& j, const std::string& ctx) {
    KernelConfig k;
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "gaussian") name = "rbf";
        if (name != "linear" && name != "polynomial" && name != "rbf" && name != "sigmoid")
            throw ConfigError(ctx + ": unknown kernel \"" + j.get<std::string>() + "\"");
        k.type = name;
        k.coef0 = 0.0;
        return k;
    }
    if (!j.is_object()) throw ConfigError(ctx + ": expected a kernel name or object");
    check_keys(j, {"type", "gamma", "degree", "coef0"}, ctx);
    if (!j.contains("type")) throw ConfigError(ctx + ": kernel object needs \"type\"");
    k = parse_kernel(j.at("type"), ctx);
    if (j.contains("gamma")) {
        if (k.type == "linear") throw ConfigError(ctx + ": linear kernel takes no gamma");
        const auto& g = j.at("gamma");
        if (g.is_string()) {
            if (g.get<std::string>() != "scale")
                throw ConfigError(ctx + ": gamma must be a positive number or \"scale\"");
        } else {
            const double v = require_number(g, ctx + ".gamma");
            if (!(v > 0)) throw ConfigError(ctx + ": gamma must be > 0");
            k.gamma = v;
        }
    }
    if (j.contains("degree")) {
        if (k.type != "polynomial") throw ConfigError(ctx + ": only polynomial kernels take a degree");
        k.degree = require_int(j.at("degree"), ctx + ".degree");
        if (k.degree < 1) throw ConfigError(ctx + ": degree must be >= 1");
    }
    if (j.contains("coef0")) {
        if (k.type != "polynomial" && k.type != "sigmoid")
            throw ConfigError(ctx + ": only polynomial and sigmoid kernels take coef0");
        k.coef0 = require_number(j.at("coef0"), ctx + ".coef0");
    }
    return k;
}

ClassifierConfig parse_classifier(const json& j, const std::string& ctx) {
    std::string type;
    json obj = json::object();
    if (j.is_string()) {
        type = j.get<std::string>();
    } else if (j.is_object()) {
        if (!j.contains("type")) throw ConfigError(ctx + ": classifier object needs \"type\"");
        type = j.at("type").get<std::string>();
        obj = j;
    } else {
        throw ConfigError(ctx + ": expected a classifier name or object");
    }

    auto num = [&](const char* key, double fallback, double min_exclusive) {
        if (!obj.contains(key)) return fallback;
        const double v = require_number(obj.at(key), ctx + "." + key);
        if (!(v > min_exclusive))
            throw ConfigError(ctx + ": " + key + " must be > " + std::to_string(min_exclusive));
        return v;
    };
    auto integer = [&](const char* key, int fallback, int min_inclusive) {
        if (!obj.contains(key)) return fallback;
        const int v = require_int(obj.at(key), ctx + "." + key);
        if (v < min_inclusive)
            throw ConfigError(ctx + ": " + key + " must be >= " + std::to_string(min_inclusive));
        return v;
    };

    if (type == "naive_bayes") {
        check_keys(obj, {"type", "alpha"}, ctx);
        return NaiveBayesSpec{num("alpha", 1.0, 0.0)};
    }
    if (type == "knn") {
        check_keys(obj, {"type", "k"}, ctx);
        KnnSpec spec{integer("k", 5, 1)};
        if (spec.k % 2 == 0) throw ConfigError(ctx + ": k must be odd");
        return spec;
    }
    if (type == "logistic") {
        check_keys(obj, {"type", "learning_rate", "l2_lambda", "max_iters", "grad_tol"}, ctx);
        LogisticSpec spec;
        spec.learning_rate = num("learning_rate", spec.learning_rate, 0.0);
        spec.l2_lambda = num("l2_lambda", spec.l2_lambda, -1.0);
        if (spec.l2_lambda < 0) throw ConfigError(ctx + ": l2_lambda must be >= 0");
        spec.max_iters = integer("max_iters", spec.max_iters, 0);
        spec.grad_tol = num("grad_tol", spec.grad_tol, 0.0);
        return spec;
    }
    if (type == "gradient_boost") {
        check_keys(obj, {"type", "rounds", "max_depth", "shrinkage"}, ctx);
        GradientBoostSpec spec;
        spec.rounds = integer("rounds", spec.rounds, 0);
        spec.max_depth = integer("max_depth", spec.max_depth, 0);
        spec.shrinkage = num("shrinkage", spec.shrinkage, 0.0);
        return spec;
    }
    if (type == "decision_tree") {
        check_keys(obj, {"type", "max_depth", "min_leaf"}, ctx);
        DecisionTreeSpec spec;
        spec.max_depth = integer("max_depth", spec.max_depth, 0);
        spec.min_leaf = integer("min_leaf", spec.min_leaf, 1);
        return spec;
    }
    if (type == "svm") {
        check_keys(obj, {"type", "C", "kernel", "tol", "eps", "max_passes"}, ctx);
        SvmConfig spec;
        spec.C = num("C", spec.C, 0.0);
        spec.tol = num("tol", spec.tol, 0.0);
        spec.eps = num("eps", spec.eps, -1.0);
        if (spec.eps < 0) throw ConfigError(ctx + ": eps must be >= 0");
        spec.max_passes = integer("max_passes", spec.max_passes, 1);
        if (obj.contains("kernel")) spec.kernel = parse_kernel(obj.at("kernel"), ctx + ".kernel");
        return spec;
    }
    if (type == "mlp") {
        check_keys(obj, {"type", "hidden_units", "learning_rate", "epochs", "init_seed"}, ctx);
        MlpSpec spec;
        spec.hidden_units = integer("hidden_units", spec.hidden_units, 1);
        spec.learning_rate = num("learning_rate", spec.learning_rate, 0.0);
        spec.epochs = integer("epochs", spec.epochs, 0);
        if (obj.contains("init_seed")) {
            if (!obj.at("init_seed").is_number_unsigned() && !obj.at("init_seed").is_number_integer())
                throw ConfigError(ctx + ": init_seed must be a non-negative integer");
            spec.init_seed = obj.at("init_seed").get<std::uint64_t>();
        }
        return spec;
    }
    throw ConfigError(ctx + ": unknown classifier \"" + type + "\"");
}

DataSource parse_data_source(const json& j, const std::string& ctx) {
    DataSource src;
    if (j.is_string()) {
        src.path = j.get<std::string>();
        return src;
    }
    if (!j.is_object()) throw ConfigError(ctx + ": expected a path or object");
    check_keys(j, {"path", "format", "schema"}, ctx);
    if (!j.contains("path")) throw ConfigError(ctx + ": data entry needs \"path\"");
    src.path = j.at("path").get<std::string>();
    if (j.contains("format")) {
        const std::string f = j.at("format").get<std::string>();
        if (f == "arff") src.format = TableFormat::Arff;
        else if (f == "csv") src.format = TableFormat::Csv;
        else
            throw ConfigError(ctx + ": format must be \"arff\" or \"csv\"");
    }
    if (j.contains("schema")) src.schema_path = j.at("schema").get<std::string>();
    return src;
}

std::vector<ClassifierConfig> default_classifiers() {
    return {NaiveBayesSpec{}, KnnSpec{},        LogisticSpec{}, GradientBoostSpec{},
            SvmConfig{},      DecisionTreeSpec{}, MlpSpec{}};
}

std::vector<KernelConfig> default_kernels() {
    KernelConfig poly{"polynomial", std::nullopt, 3, 0.0};
    KernelConfig rbf{"rbf", std::nullopt, 3, 0.0};
    KernelConfig sigmoid{"sigmoid", std::nullopt, 3, 0.0};
    return {poly, rbf, sigmoid};
}

}  // namespace

KernelSpec KernelConfig::resolve(const Matrix& train_features) const {
    const double d = static_cast<double>(train_features.cols);
    if (type == "linear") return LinearKernel{};
    if (type == "polynomial")
        return PolynomialKernel{degree, gamma.value_or(1.0 / d), coef0};
    if (type == "rbf") return RbfKernel{gamma ? *gamma : scale_gamma(train_features)};
    return SigmoidKernel{gamma.value_or(1.0 / d), coef0};
}

nlohmann::ordered_json KernelConfig::to_json() const {
    json j{{"type", type}};
    if (type != "linear") j["gamma"] = gamma ? json(*gamma) : json("scale");
    if (type == "polynomial") j["degree"] = degree;
    if (type == "polynomial" || type == "sigmoid") j["coef0"] = coef0;
    return j;
}

std::string KernelConfig::display_name() const {
    if (type == "linear") return "Linear";
    if (type == "polynomial") return "Polynomial";
    if (type == "rbf") return "Gaussian";
    return "Sigmoid";
}

SvmSpec SvmConfig::resolve(const Matrix& train_features) const {
    return SvmSpec{C, kernel.resolve(train_features), tol, eps, max_passes};
}

std::string classifier_config_name(const ClassifierConfig& config) {
    if (std::holds_alternative<SvmConfig>(config)) return "SVM";
    return std::visit(
        [](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, SvmConfig>) return "SVM";
            else
                return classifier_name(ClassifierSpec{s});
        },
        config);
}

ClassifierSpec resolve_classifier(const ClassifierConfig& config, const Matrix& train_features) {
    return std::visit(
        [&](const auto& s) -> ClassifierSpec {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, SvmConfig>) return s.resolve(train_features);
            else
                return s;
        },
        config);
}

bool wants_standardized(const ClassifierConfig& config) {
    return std::holds_alternative<KnnSpec>(config) || std::holds_alternative<LogisticSpec>(config) ||
           std::holds_alternative<SvmConfig>(config) || std::holds_alternative<MlpSpec>(config);
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(j,
               {"data", "train_fraction", "seed", "repeat", "classifiers", "kernels", "out_dir",
                "drop_columns", "sample_rows"},
               "config");

    ExperimentConfig cfg;
    if (!j.contains("data") || !j.at("data").is_array() || j.at("data").empty())
        throw ConfigError("config: \"data\" must be a non-empty array");
    for (std::size_t i = 0; i < j.at("data").size(); ++i)
        cfg.data.push_back(parse_data_source(j.at("data")[i],
                                             "config.data[" + std::to_string(i) + "]"));

    if (j.contains("train_fraction")) {
        cfg.train_fraction = require_number(j.at("train_fraction"), "config.train_fraction");
        if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
            throw ConfigError("config: train_fraction must lie in (0, 1)");
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer() && !j.at("seed").is_number_unsigned())
            throw ConfigError("config: seed must be a non-negative integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("repeat")) {
        cfg.repeat = require_int(j.at("repeat"), "config.repeat");
        if (cfg.repeat < 1) throw ConfigError("config: repeat must be >= 1");
    }
    if (j.contains("classifiers")) {
        if (!j.at("classifiers").is_array())
            throw ConfigError("config: \"classifiers\" must be an array");
        for (std::size_t i = 0; i < j.at("classifiers").size(); ++i)
            cfg.classifiers.push_back(parse_classifier(
                j.at("classifiers")[i], "config.classifiers[" + std::to_string(i) + "]"));
    } else {
        cfg.classifiers = default_classifiers();
    }
    if (j.contains("kernels")) {
        if (!j.at("kernels").is_array()) throw ConfigError("config: \"kernels\" must be an array");
        for (std::size_t i = 0; i < j.at("kernels").size(); ++i)
            cfg.kernels.push_back(
                parse_kernel(j.at("kernels")[i], "config.kernels[" + std::to_string(i) + "]"));
    } else {
        cfg.kernels = default_kernels();
    }
    if (cfg.classifiers.empty() && cfg.kernels.empty())
        throw ConfigError("config: need at least one classifier or kernel");
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("drop_columns")) {
        if (!j.at("drop_columns").is_array())
            throw ConfigError("config: \"drop_columns\" must be an array of names");
        cfg.drop_columns.clear();
        for (const auto& name : j.at("drop_columns"))
            cfg.drop_columns.push_back(name.get<std::string>());
    }
    if (j.contains("sample_rows")) {
        cfg.sample_rows = require_int(j.at("sample_rows"), "config.sample_rows");
        if (cfg.sample_rows < 0) throw ConfigError("config: sample_rows must be >= 0");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
    json j;
    json data = json::array();
    for (const auto& src : config.data) {
        json d{{"path", src.path}};
        if (src.format)
            d["format"] = *src.format == TableFormat::Arff ? "arff" : "csv";
        if (!src.schema_path.empty()) d["schema"] = src.schema_path;
        data.push_back(std::move(d));
    }
    j["data"] = std::move(data);
    j["train_fraction"] = config.train_fraction;
    j["seed"] = config.seed;
    j["repeat"] = config.repeat;

    json classifiers = json::array();
    for (const auto& c : config.classifiers) {
        classifiers.push_back(std::visit(
            [](const auto& s) -> json {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, NaiveBayesSpec>)
                    return json{{"type", "naive_bayes"}, {"alpha", s.alpha}};
                else if constexpr (std::is_same_v<S, KnnSpec>)
                    return json{{"type", "knn"}, {"k", s.k}};
                else if constexpr (std::is_same_v<S, LogisticSpec>)
                    return json{{"type", "logistic"},
                                {"learning_rate", s.learning_rate},
                                {"l2_lambda", s.l2_lambda},
                                {"max_iters", s.max_iters},
                                {"grad_tol", s.grad_tol}};
                else if constexpr (std::is_same_v<S, GradientBoostSpec>)
                    return json{{"type", "gradient_boost"},
                                {"rounds", s.rounds},
                                {"max_depth", s.max_depth},
                                {"shrinkage", s.shrinkage}};
                else if constexpr (std::is_same_v<S, DecisionTreeSpec>)
                    return json{{"type", "decision_tree"},
                                {"max_depth", s.max_depth},
                                {"min_leaf", s.min_leaf}};
                else if constexpr (std::is_same_v<S, SvmConfig>)
                    return json{{"type", "svm"},
                                {"C", s.C},
                                {"kernel", s.kernel.to_json()},
                                {"tol", s.tol},
                                {"eps", s.eps},
                                {"max_passes", s.max_passes}};
                else
                    return json{{"type", "mlp"},
                                {"hidden_units", s.hidden_units},
                                {"learning_rate", s.learning_rate},
                                {"epochs", s.epochs},
                                {"init_seed", s.init_seed}};
            },
            c));
    }
    j["classifiers"] = std::move(classifiers);

    json kernels = json::array();
    for (const auto& k : config.kernels) kernels.push_back(k.to_json());
    j["kernels"] = std::move(kernels);
    j["out_dir"] = config.out_dir;
    j["drop_columns"] = config.drop_columns;
    j["sample_rows"] = config.sample_rows;
    return j;
}

}  // namespace asdml

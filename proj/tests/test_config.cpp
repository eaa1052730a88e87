#include <doctest.h>

#include "asdml/config.hpp"
#include "asdml/errors.hpp"

using namespace asdml;

TEST_CASE("minimal config resolves every default") {
    const ExperimentConfig cfg = parse_config(R"({"data": ["a.arff"], "seed": 42})");
    CHECK(cfg.train_fraction == 0.7);
    CHECK(cfg.seed == 42);
    CHECK(cfg.repeat == 1);
    REQUIRE(cfg.classifiers.size() == 7);
    CHECK(classifier_config_name(cfg.classifiers[0]) == "NB");
    CHECK(classifier_config_name(cfg.classifiers[1]) == "kNN");
    CHECK(classifier_config_name(cfg.classifiers[2]) == "LR");
    CHECK(classifier_config_name(cfg.classifiers[3]) == "GB");
    CHECK(classifier_config_name(cfg.classifiers[4]) == "SVM");
    CHECK(classifier_config_name(cfg.classifiers[5]) == "DT");
    CHECK(classifier_config_name(cfg.classifiers[6]) == "MLP");
    REQUIRE(cfg.kernels.size() == 3);
    CHECK(cfg.kernels[0].display_name() == "Polynomial");
    CHECK(cfg.kernels[1].display_name() == "Gaussian");
    CHECK(cfg.kernels[2].display_name() == "Sigmoid");
    CHECK(cfg.drop_columns == std::vector<std::string>{"age_desc", "result"});
}

TEST_CASE("unknown keys are rejected by name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"data": ["a.arff"], "foo": 1})"),
                         doctest::Contains("foo"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"data": ["a.arff"], "classifiers": [{"type": "knn", "kk": 3}]})"),
        doctest::Contains("kk"), ConfigError);
}

TEST_CASE("range validation") {
    CHECK_THROWS_AS(parse_config(R"({"data": ["a.arff"], "train_fraction": 1.5})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"data": ["a.arff"], "train_fraction": 0.0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"data": ["a.arff"], "repeat": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"data": []})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"data": ["a.arff"], "classifiers": [], "kernels": []})"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"data": ["a.arff"], "classifiers": [{"type": "knn", "k": 4}]})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"data": ["a.arff"], "kernels": [{"type": "rbf", "gamma": -2}]})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"data": ["a.arff"], "kernels": [{"type": "linear", "gamma": 1}]})"),
        ConfigError);
}

TEST_CASE("kernel entries accept names, objects and the scale marker") {
    const ExperimentConfig cfg = parse_config(R"({
        "data": ["a.arff"],
        "kernels": ["gaussian", {"type": "polynomial", "degree": 2, "gamma": 0.5, "coef0": 2.0},
                    {"type": "sigmoid", "gamma": "scale"}]
    })");
    REQUIRE(cfg.kernels.size() == 3);
    CHECK(cfg.kernels[0].type == "rbf");
    CHECK_FALSE(cfg.kernels[0].gamma.has_value());
    CHECK(cfg.kernels[1].degree == 2);
    CHECK(cfg.kernels[1].gamma == 0.5);
    CHECK(cfg.kernels[1].coef0 == 2.0);
    CHECK_FALSE(cfg.kernels[2].gamma.has_value());

    Matrix x(2, 2);
    x(0, 1) = 2.0;
    x(1, 0) = 2.0;
    // Column variances are 1 -> scale gamma = 1/2; fixed gammas pass through.
    CHECK(std::get<RbfKernel>(cfg.kernels[0].resolve(x)).gamma == doctest::Approx(0.5));
    CHECK(std::get<PolynomialKernel>(cfg.kernels[1].resolve(x)).gamma == 0.5);
    CHECK(std::get<SigmoidKernel>(cfg.kernels[2].resolve(x)).gamma == doctest::Approx(0.5));
}

TEST_CASE("config echo is loadable and stable") {
    const std::string text = R"({
        "data": [{"path": "a.arff", "format": "arff"}],
        "train_fraction": 0.8,
        "seed": 7,
        "repeat": 3,
        "classifiers": ["knn", {"type": "svm", "C": 2.5, "kernel": "sigmoid"}],
        "kernels": ["rbf"],
        "out_dir": "results",
        "drop_columns": ["result"],
        "sample_rows": 5
    })";
    const ExperimentConfig cfg = parse_config(text);
    const auto echo = config_to_json(cfg);
    const ExperimentConfig reloaded = parse_config(echo.dump());
    CHECK(config_to_json(reloaded) == echo);
    CHECK(reloaded.train_fraction == 0.8);
    CHECK(reloaded.repeat == 3);
    REQUIRE(reloaded.classifiers.size() == 2);
    const auto& svm = std::get<SvmConfig>(reloaded.classifiers[1]);
    CHECK(svm.C == 2.5);
    CHECK(svm.kernel.type == "sigmoid");
}

TEST_CASE("standardized-features routing") {
    CHECK(wants_standardized(KnnSpec{}));
    CHECK(wants_standardized(SvmConfig{}));
    CHECK(wants_standardized(LogisticSpec{}));
    CHECK(wants_standardized(MlpSpec{}));
    CHECK_FALSE(wants_standardized(NaiveBayesSpec{}));
    CHECK_FALSE(wants_standardized(DecisionTreeSpec{}));
    CHECK_FALSE(wants_standardized(GradientBoostSpec{}));
}

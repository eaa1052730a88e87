// Small synthetic SVM instances shared by the unit and acceptance suites.
#pragma once

#include <string>
#include <vector>

#include "asdml/model.hpp"
#include "test_util.hpp"

namespace svm_corpus {

struct Instance {
    std::string name;
    asdml::Dataset data;
    asdml::SvmSpec spec;
};

inline std::vector<Instance> instances() {
    using test_util::make_dataset;
    std::vector<Instance> all;

    asdml::SvmSpec two_point;
    two_point.C = 10.0;
    two_point.kernel = asdml::LinearKernel{};
    all.push_back({"2pt_linear", make_dataset({{1}, {-1}}, {1, 0}), two_point});

    asdml::SvmSpec bounded = two_point;
    bounded.C = 0.3;
    all.push_back({"2pt_linear_bounded", make_dataset({{1}, {-1}}, {1, 0}), bounded});

    asdml::SvmSpec three_linear;
    three_linear.C = 5.0;
    three_linear.kernel = asdml::LinearKernel{};
    all.push_back(
        {"3pt_linear", make_dataset({{-2}, {-0.5}, {1}}, {0, 0, 1}), three_linear});

    asdml::SvmSpec three_rbf;
    three_rbf.C = 2.0;
    three_rbf.kernel = asdml::RbfKernel{0.7};
    all.push_back({"3pt_rbf",
                   make_dataset({{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}}, {0, 1, 1}), three_rbf});

    asdml::SvmSpec duplicate;
    duplicate.C = 1.0;
    duplicate.kernel = asdml::LinearKernel{};
    all.push_back(
        {"3pt_conflicting_duplicate", make_dataset({{0}, {0}, {1}}, {0, 1, 1}), duplicate});

    asdml::SvmSpec xor_rbf;
    xor_rbf.C = 100.0;
    xor_rbf.kernel = asdml::RbfKernel{1.0};
    all.push_back({"4pt_xor_rbf", test_util::xor_dataset(), xor_rbf});

    asdml::SvmSpec xor_poly;
    xor_poly.C = 10.0;
    xor_poly.kernel = asdml::PolynomialKernel{2, 1.0, 1.0};
    all.push_back({"4pt_xor_poly", test_util::xor_dataset(), xor_poly});

    asdml::SvmSpec stripes;
    stripes.C = 2.0;
    stripes.kernel = asdml::LinearKernel{};
    all.push_back(
        {"4pt_linear_overlap", make_dataset({{0}, {1}, {2}, {3}}, {0, 1, 0, 1}), stripes});

    return all;
}

}  // namespace svm_corpus

#pragma once

#include <span>
#include <string>
#include <variant>

#include "asdml/matrix.hpp"

namespace asdml {

struct LinearKernel {
    bool operator==(const LinearKernel&) const = default;
};

struct PolynomialKernel {
    int degree = 3;
    double gamma = 1.0;
    double coef0 = 0.0;
    bool operator==(const PolynomialKernel&) const = default;
};

struct RbfKernel {
    double gamma = 1.0;
    bool operator==(const RbfKernel&) const = default;
};

struct SigmoidKernel {
    double gamma = 1.0;
    double coef0 = 0.0;
    bool operator==(const SigmoidKernel&) const = default;
};

using KernelSpec = std::variant<LinearKernel, PolynomialKernel, RbfKernel, SigmoidKernel>;

// Throws std::invalid_argument when parameters fall outside their ranges
// (gamma > 0, degree >= 1).
void validate_kernel(const KernelSpec& spec);

// Display names matching the report tables: Linear, Polynomial, Gaussian,
// Sigmoid.
std::string kernel_name(const KernelSpec& spec);

// k(x, y). Linear: x.y; Polynomial: (gamma x.y + coef0)^degree;
// Rbf: exp(-gamma |x-y|^2); Sigmoid: tanh(gamma x.y + coef0).
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

// Full Gram matrix; the upper triangle is computed and mirrored so the
// result is exactly symmetric.
Matrix gram_matrix(const KernelSpec& spec, const Matrix& X);

// 1 / (d * mean per-column population variance); falls back to 1/d when the
// variance is zero.
double scale_gamma(const Matrix& X);

}  // namespace asdml

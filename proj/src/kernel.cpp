#include "asdml/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace asdml {

namespace {

void check_vectors(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("kernel_eval: vectors have different dimensions");
    for (const double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("kernel_eval: non-finite input");
    for (const double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("kernel_eval: non-finite input");
}

double dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - y[i];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

void validate_kernel(const KernelSpec& spec) {
    std::visit(
        [](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PolynomialKernel>) {
                if (k.degree < 1) throw std::invalid_argument("polynomial kernel: degree must be >= 1");
                if (!(k.gamma > 0)) throw std::invalid_argument("polynomial kernel: gamma must be > 0");
                if (!std::isfinite(k.coef0))
                    throw std::invalid_argument("polynomial kernel: coef0 must be finite");
            } else if constexpr (std::is_same_v<K, RbfKernel>) {
                if (!(k.gamma > 0)) throw std::invalid_argument("rbf kernel: gamma must be > 0");
            } else if constexpr (std::is_same_v<K, SigmoidKernel>) {
                if (!(k.gamma > 0)) throw std::invalid_argument("sigmoid kernel: gamma must be > 0");
                if (!std::isfinite(k.coef0))
                    throw std::invalid_argument("sigmoid kernel: coef0 must be finite");
            }
        },
        spec);
}

std::string kernel_name(const KernelSpec& spec) {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, LinearKernel>) return "Linear";
            else if constexpr (std::is_same_v<K, PolynomialKernel>) return "Polynomial";
            else if constexpr (std::is_same_v<K, RbfKernel>) return "Gaussian";
            else return "Sigmoid";
        },
        spec);
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
    check_vectors(x, y);
    return std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, LinearKernel>) {
                return dot(x, y);
            } else if constexpr (std::is_same_v<K, PolynomialKernel>) {
                return std::pow(k.gamma * dot(x, y) + k.coef0, k.degree);
            } else if constexpr (std::is_same_v<K, RbfKernel>) {
                return std::exp(-k.gamma * squared_distance(x, y));
            } else {
                return std::tanh(k.gamma * dot(x, y) + k.coef0);
            }
        },
        spec);
}

Matrix gram_matrix(const KernelSpec& spec, const Matrix& X) {
    if (X.rows < 1) throw std::invalid_argument("gram_matrix: empty input");
    Matrix g(X.rows, X.rows);
    for (std::size_t i = 0; i < X.rows; ++i) {
        for (std::size_t j = i; j < X.rows; ++j) {
            const double v = kernel_eval(spec, X.row(i), X.row(j));
            if (!std::isfinite(v))
                throw std::invalid_argument("gram_matrix: non-finite kernel value");
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

double scale_gamma(const Matrix& X) {
    if (X.rows == 0 || X.cols == 0) throw std::invalid_argument("scale_gamma: empty matrix");
    double total_var = 0.0;
    for (std::size_t j = 0; j < X.cols; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < X.rows; ++i) sum += X(i, j);
        const double mean = sum / static_cast<double>(X.rows);
        double sq = 0.0;
        for (std::size_t i = 0; i < X.rows; ++i) {
            const double diff = X(i, j) - mean;
            sq += diff * diff;
        }
        total_var += sq / static_cast<double>(X.rows);
    }
    const double mean_var = total_var / static_cast<double>(X.cols);
    const double denom = static_cast<double>(X.cols) * (mean_var > 0 ? mean_var : 1.0);
    return 1.0 / denom;
}

}  // namespace asdml

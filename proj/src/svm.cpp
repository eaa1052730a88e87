#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asdml/classifiers.hpp"
#include "asdml/errors.hpp"

namespace asdml {

namespace {

// Hard cap on full scan passes; hit only by indefinite kernels that keep
// cycling, reported through diagnostics.
constexpr int kMaxScanPasses = 300;

struct SmoState {
    const Matrix& gram;
    const std::vector<double>& y;  // +-1
    double C;
    double eps;
    std::vector<double> alpha;
    std::vector<double> error;  // E_i = f(x_i) - y_i
    double bias = 0.0;

    SmoState(const Matrix& g, const std::vector<double>& labels, double c, double e)
        : gram(g), y(labels), C(c), eps(e), alpha(labels.size(), 0.0), error(labels.size()) {
        for (std::size_t i = 0; i < labels.size(); ++i) error[i] = -labels[i];
    }

    bool take_step(std::size_t i, std::size_t j) {
        if (i == j) return false;
        const double ai = alpha[i], aj = alpha[j];
        const double yi = y[i], yj = y[j];
        const double s = yi * yj;

        double lo, hi;
        if (s < 0) {
            lo = std::max(0.0, aj - ai);
            hi = std::min(C, C + aj - ai);
        } else {
            lo = std::max(0.0, ai + aj - C);
            hi = std::min(C, ai + aj);
        }
        if (lo >= hi) return false;

        const double k11 = gram(i, i), k22 = gram(j, j), k12 = gram(i, j);
        const double eta = k11 + k22 - 2.0 * k12;
        double aj_new;
        if (eta > 0.0) {
            aj_new = aj + yj * (error[i] - error[j]) / eta;
            aj_new = std::clamp(aj_new, lo, hi);
        } else {
            // Objective change for alpha_j -> t along the constraint line:
            // dPsi(t) = yj (E_j - E_i)(t - aj) + eta (t - aj)^2 / 2.
            auto delta_obj = [&](double t) {
                const double d = t - aj;
                return yj * (error[j] - error[i]) * d + 0.5 * eta * d * d;
            };
            const double at_lo = delta_obj(lo), at_hi = delta_obj(hi);
            if (at_lo < at_hi - 1e-12)
                aj_new = lo;
            else if (at_hi < at_lo - 1e-12)
                aj_new = hi;
            else
                return false;
        }
        if (std::abs(aj_new - aj) < eps * (aj_new + aj + eps)) return false;

        double ai_new = ai + s * (aj - aj_new);
        ai_new = std::clamp(ai_new, 0.0, C);

        const double di = ai_new - ai, dj = aj_new - aj;
        const double b1 = bias - error[i] - yi * di * k11 - yj * dj * k12;
        const double b2 = bias - error[j] - yi * di * k12 - yj * dj * k22;
        double bias_new;
        if (ai_new > 0.0 && ai_new < C)
            bias_new = b1;
        else if (aj_new > 0.0 && aj_new < C)
            bias_new = b2;
        else
            bias_new = 0.5 * (b1 + b2);

        const double shift = bias_new - bias;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            error[k] += yi * di * gram(i, k) + yj * dj * gram(j, k) + shift;
        alpha[i] = ai_new;
        alpha[j] = aj_new;
        bias = bias_new;
        return true;
    }

    bool violates_kkt(std::size_t i, double tol) const {
        const double r = error[i] * y[i];  // y_i f(x_i) - 1
        return (r < -tol && alpha[i] < C) || (r > tol && alpha[i] > 0.0);
    }

    // Second multiplier: maximal |E_i - E_j|, ties to the lower index.
    std::size_t pick_second(std::size_t i) const {
        std::size_t best = i == 0 ? 1 : 0;
        double best_gap = -1.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            if (j == i) continue;
            const double gap = std::abs(error[i] - error[j]);
            if (gap > best_gap) {
                best_gap = gap;
                best = j;
            }
        }
        return best;
    }

    // When the preferred pair cannot move (bounds or tiny step), fall back
    // to scanning the remaining multipliers in index order; without this the
    // solver can stall with KKT violations left.
    bool examine(std::size_t i) {
        const std::size_t preferred = pick_second(i);
        if (take_step(i, preferred)) return true;
        for (std::size_t j = 0; j < alpha.size(); ++j)
            if (j != i && j != preferred && take_step(i, j)) return true;
        return false;
    }
};

}  // namespace

SmoResult smo_train(const Dataset& train, const SvmSpec& spec) {
    const std::size_t n = train.n();
    if (n == 0) throw TrainError("svm: empty training set");
    if (!(spec.C > 0)) throw TrainError("svm: C must be > 0");
    if (!(spec.tol > 0)) throw TrainError("svm: tol must be > 0");
    if (spec.eps < 0) throw TrainError("svm: eps must be >= 0");
    if (spec.max_passes < 1) throw TrainError("svm: max_passes must be >= 1");
    try {
        validate_kernel(spec.kernel);
    } catch (const std::invalid_argument& e) {
        throw TrainError(std::string("svm: ") + e.what());
    }

    std::vector<double> y(n);
    std::size_t positives = 0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = train.labels[i] == 1 ? 1.0 : -1.0;
        positives += static_cast<std::size_t>(train.labels[i]);
    }
    if (positives == 0 || positives == n)
        throw TrainError("svm: training data contains a single class");

    Matrix gram;
    try {
        gram = gram_matrix(spec.kernel, train.features);
    } catch (const std::invalid_argument& e) {
        throw TrainError(std::string("svm: ") + e.what());
    }

    SmoState state(gram, y, spec.C, spec.eps);
    SmoResult result;
    int no_change_passes = 0;
    bool stopped_normally = false;
    while (result.diagnostics.passes < kMaxScanPasses) {
        ++result.diagnostics.passes;
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!state.violates_kkt(i, spec.tol)) continue;
            if (n < 2) break;
            if (state.examine(i)) {
                ++changed;
                ++result.diagnostics.steps;
            }
        }
        no_change_passes = changed == 0 ? no_change_passes + 1 : 0;
        if (no_change_passes >= spec.max_passes) {
            stopped_normally = true;
            break;
        }
    }

    // Bias from the average over non-bound support vectors; when none exist,
    // the midpoint of the feasible KKT interval.
    double sum = 0.0;
    std::size_t non_bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (state.alpha[i] > 0.0 && state.alpha[i] < spec.C) {
            sum += state.bias - state.error[i];
            ++non_bound;
        }
    }
    double final_bias;
    if (non_bound > 0) {
        final_bias = sum / static_cast<double>(non_bound);
    } else {
        double max_lower = -HUGE_VAL, min_upper = HUGE_VAL;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = state.error[i] + y[i] - state.bias;  // f_i without bias
            const double target = y[i] > 0 ? 1.0 - g : -1.0 - g;
            const bool at_zero = state.alpha[i] <= 0.0;
            const bool at_c = state.alpha[i] >= spec.C;
            const bool lower_side = (at_zero && y[i] > 0) || (at_c && y[i] < 0);
            const bool upper_side = (at_c && y[i] > 0) || (at_zero && y[i] < 0);
            if (lower_side || !(at_zero || at_c)) max_lower = std::max(max_lower, target);
            if (upper_side || !(at_zero || at_c)) min_upper = std::min(min_upper, target);
        }
        final_bias = std::isfinite(max_lower) && std::isfinite(min_upper)
                         ? 0.5 * (max_lower + min_upper)
                         : state.bias;
    }

    // KKT census and dual objective at the final state.
    int violations = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = state.error[i] + y[i] - state.bias;
        const double margin = y[i] * (g + final_bias);
        if (state.alpha[i] <= 0.0) {
            if (margin < 1.0 - spec.tol) ++violations;
        } else if (state.alpha[i] >= spec.C) {
            if (margin > 1.0 + spec.tol) ++violations;
        } else if (std::abs(margin - 1.0) > spec.tol) {
            ++violations;
        }
    }
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (state.alpha[i] == 0.0) continue;
        objective += state.alpha[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (state.alpha[j] == 0.0) continue;
            objective -= 0.5 * state.alpha[i] * state.alpha[j] * y[i] * y[j] * gram(i, j);
        }
    }

    result.alpha = std::move(state.alpha);
    result.bias = final_bias;
    result.diagnostics.converged = stopped_normally;
    result.diagnostics.kkt_violations = violations;
    result.diagnostics.dual_objective = objective;
    return result;
}

TrainedModel fit_svm(const Dataset& train, const SvmSpec& spec) {
    SmoResult smo = smo_train(train, spec);
    SvmModel model;
    model.kernel = spec.kernel;
    model.bias = smo.bias;
    model.diagnostics = smo.diagnostics;

    std::size_t n_sv = 0;
    for (const double a : smo.alpha)
        if (a > 0.0) ++n_sv;
    model.support_vectors = Matrix(n_sv, train.dim());
    model.sv_coeff.reserve(n_sv);
    std::size_t row = 0;
    for (std::size_t i = 0; i < train.n(); ++i) {
        if (smo.alpha[i] <= 0.0) continue;
        for (std::size_t j = 0; j < train.dim(); ++j)
            model.support_vectors(row, j) = train.features(i, j);
        model.sv_coeff.push_back(smo.alpha[i] * (train.labels[i] == 1 ? 1.0 : -1.0));
        ++row;
    }
    return model;
}

}  // namespace asdml

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace asdml {

// Positive class = label 1 = "YES".
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool operator==(const ClassMetrics&) const = default;
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    bool operator==(const RocPoint&) const = default;
};

struct RocCurve {
    std::vector<RocPoint> points;
    bool operator==(const RocCurve&) const = default;
};

struct MetricReport {
    double accuracy = 0.0;
    double auc = 0.0;
    ClassMetrics no_class;
    ClassMetrics yes_class;
    ConfusionMatrix confusion;
    RocCurve roc;
    // Names of metrics that hit the 0/0 -> 0 convention.
    std::vector<std::string> degenerate;
};

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted);

// Accuracy plus per-class precision/recall/F1; 0/0 defined as 0 and listed
// in `degenerate`. The ROC/AUC fields are left empty.
MetricReport prf_report(const ConfusionMatrix& cm);

// Threshold sweep over distinct scores (descending), tied scores grouped
// into a single step; starts at (0,0) and ends at (1,1).
RocCurve roc_points(std::span<const double> scores, std::span<const int> truth);

// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

// O(n^2) pairwise probability P(score+ > score-) + P(tie)/2; the
// independent cross-check for auc(roc_points(...)).
double auc_pairwise_oracle(std::span<const double> scores, std::span<const int> truth);

// Full report for a set of scored predictions.
MetricReport evaluate(std::span<const int> truth, std::span<const int> predicted,
                      std::span<const double> scores);

}  // namespace asdml

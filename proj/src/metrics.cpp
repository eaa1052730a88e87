#include "asdml/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace asdml {

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("confusion: truth and prediction lengths differ");
    if (truth.empty()) throw std::invalid_argument("confusion: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 1)
            predicted[i] == 1 ? ++cm.tp : ++cm.fn;
        else
            predicted[i] == 1 ? ++cm.fp : ++cm.tn;
    }
    return cm;
}

MetricReport prf_report(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("prf_report: empty confusion matrix");
    MetricReport report;
    report.confusion = cm;
    report.accuracy =
        static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());

    auto ratio = [&report](std::size_t num, std::size_t den, const char* name) {
        if (den == 0) {
            report.degenerate.emplace_back(name);
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };
    report.yes_class.precision = ratio(cm.tp, cm.tp + cm.fp, "precision_yes");
    report.yes_class.recall = ratio(cm.tp, cm.tp + cm.fn, "recall_yes");
    report.no_class.precision = ratio(cm.tn, cm.tn + cm.fn, "precision_no");
    report.no_class.recall = ratio(cm.tn, cm.tn + cm.fp, "recall_no");

    auto f1 = [&report](const ClassMetrics& m, const char* name) {
        if (m.precision + m.recall == 0.0) {
            report.degenerate.emplace_back(name);
            return 0.0;
        }
        return 2.0 * m.precision * m.recall / (m.precision + m.recall);
    };
    report.yes_class.f1 = f1(report.yes_class, "f1_yes");
    report.no_class.f1 = f1(report.no_class, "f1_no");
    return report;
}

RocCurve roc_points(std::span<const double> scores, std::span<const int> truth) {
    if (scores.size() != truth.size())
        throw std::invalid_argument("roc_points: scores and truth lengths differ");
    const std::size_t n = truth.size();
    std::size_t positives = 0;
    for (const int y : truth) positives += static_cast<std::size_t>(y);
    const std::size_t negatives = n - positives;
    if (positives == 0 || negatives == 0)
        throw std::invalid_argument("roc_points: both classes required");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < n) {
        // One step per group of tied scores.
        const double s = scores[order[i]];
        while (i < n && scores[order[i]] == s) {
            if (truth[order[i]] == 1)
                ++tp;
            else
                ++fp;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                                static_cast<double>(tp) / static_cast<double>(positives)});
    }
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    return area;
}

double auc_pairwise_oracle(std::span<const double> scores, std::span<const int> truth) {
    if (scores.size() != truth.size())
        throw std::invalid_argument("auc_pairwise_oracle: lengths differ");
    std::size_t positives = 0;
    for (const int y : truth) positives += static_cast<std::size_t>(y);
    const std::size_t negatives = truth.size() - positives;
    if (positives == 0 || negatives == 0)
        throw std::invalid_argument("auc_pairwise_oracle: both classes required");

    double wins = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] != 1) continue;
        for (std::size_t j = 0; j < truth.size(); ++j) {
            if (truth[j] != 0) continue;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    return wins / (static_cast<double>(positives) * static_cast<double>(negatives));
}

MetricReport evaluate(std::span<const int> truth, std::span<const int> predicted,
                      std::span<const double> scores) {
    MetricReport report = prf_report(confusion(truth, predicted));
    report.roc = roc_points(scores, truth);
    report.auc = auc(report.roc);
    return report;
}

}  // namespace asdml

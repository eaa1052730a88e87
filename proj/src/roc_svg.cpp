#include <cstdio>
#include <string>

#include "asdml/errors.hpp"
#include "asdml/runner.hpp"

namespace asdml {

namespace {

constexpr double kPlotX = 64.0, kPlotY = 24.0, kPlotSize = 440.0;
constexpr double kWidth = 760.0, kHeight = 540.0;

const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

double px(double fpr) { return kPlotX + fpr * kPlotSize; }
double py(double tpr) { return kPlotY + kPlotSize - tpr * kPlotSize; }

}  // namespace

std::string roc_svg(const std::vector<std::pair<std::string, RocCurve>>& curves) {
    if (curves.empty()) throw DataError("roc_svg: no curves to plot");
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes with ticks every 0.2.
    svg += "<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
    svg += "<rect x=\"" + num(kPlotX) + "\" y=\"" + num(kPlotY) + "\" width=\"" + num(kPlotSize) +
           "\" height=\"" + num(kPlotSize) + "\"/>\n";
    svg += "</g>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (int t = 0; t <= 5; ++t) {
        const double v = t / 5.0;
        svg += "<line x1=\"" + num(px(v)) + "\" y1=\"" + num(py(0) + 4) + "\" x2=\"" + num(px(v)) +
               "\" y2=\"" + num(py(0)) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + num(px(v)) + "\" y=\"" + num(py(0) + 18) +
               "\" text-anchor=\"middle\">" + num(v) + "</text>\n";
        svg += "<line x1=\"" + num(kPlotX - 4) + "\" y1=\"" + num(py(v)) + "\" x2=\"" +
               num(kPlotX) + "\" y2=\"" + num(py(v)) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + num(kPlotX - 8) + "\" y=\"" + num(py(v) + 4) +
               "\" text-anchor=\"end\">" + num(v) + "</text>\n";
    }
    svg += "<text x=\"" + num(kPlotX + kPlotSize / 2) + "\" y=\"" + num(py(0) + 40) +
           "\" text-anchor=\"middle\">False positive rate</text>\n";
    svg += "<text x=\"18\" y=\"" + num(kPlotY + kPlotSize / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + num(kPlotY + kPlotSize / 2) +
           ")\">True positive rate</text>\n";
    svg += "</g>\n";

    // Chance diagonal.
    svg += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(1)) +
           "\" y2=\"" + num(py(1)) +
           "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";

    const double legend_x = kPlotX + kPlotSize + 24;
    double legend_y = kPlotY + 16;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& [name, curve] = curves[c];
        const char* color = kPalette[c % 10];
        std::string points;
        for (const auto& p : curve.points)
            points += num(px(p.fpr)) + "," + num(py(p.tpr)) + " ";
        if (!points.empty()) points.pop_back();
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";

        char label[128];
        std::snprintf(label, sizeof(label), "%s (AUC = %.3f)", name.c_str(), auc(curve));
        svg += "<line x1=\"" + num(legend_x) + "\" y1=\"" + num(legend_y - 4) + "\" x2=\"" +
               num(legend_x + 26) + "\" y2=\"" + num(legend_y - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(legend_x + 32) + "\" y=\"" + num(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">" + label +
               "</text>\n";
        legend_y += 20;
    }
    svg += "</svg>\n";
    return svg;
}

std::string roc_svg_from_report(const std::string& report_json_text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(report_json_text);
    } catch (const nlohmann::ordered_json::exception& e) {
        throw DataError(std::string("report json: ") + e.what());
    }
    std::vector<std::pair<std::string, RocCurve>> curves;
    try {
        for (const char* group : {"classifiers", "kernels"}) {
            if (!j.contains(group)) continue;
            for (const auto& m : j.at(group)) {
                RocCurve curve;
                const auto& fpr = m.at("base_roc").at("fpr");
                const auto& tpr = m.at("base_roc").at("tpr");
                for (std::size_t i = 0; i < fpr.size(); ++i)
                    curve.points.push_back({fpr[i].get<double>(), tpr[i].get<double>()});
                curves.emplace_back(m.at("name").get<std::string>(), std::move(curve));
            }
        }
    } catch (const nlohmann::ordered_json::exception& e) {
        throw DataError(std::string("report json: ") + e.what());
    }
    if (curves.empty()) throw DataError("report json: no ROC curves found");
    return roc_svg(curves);
}

}  // namespace asdml

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "asdml/classifiers.hpp"
#include "asdml/config.hpp"
#include "asdml/errors.hpp"
#include "asdml/metrics.hpp"
#include "asdml/model_json.hpp"
#include "asdml/runner.hpp"
#include "asdml/table.hpp"
#include "asdml/table_ops.hpp"

namespace py = pybind11;
using namespace asdml;

namespace {

// std::variant would be consumed by the stl.h caster; holders keep the
// kernel and model opaque on the python side.
struct PyKernel {
    KernelSpec spec;
};

struct PyModel {
    TrainedModel model;
};

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t d = n ? rows.front().size() : 0;
    Matrix m(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != d) throw std::invalid_argument("ragged feature rows");
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<double>> from_matrix(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows, std::vector<double>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) rows[i][j] = m(i, j);
    return rows;
}

PyKernel make_kernel(const std::string& type, std::optional<double> gamma, int degree,
                     double coef0) {
    KernelSpec spec;
    if (type == "linear") spec = LinearKernel{};
    else if (type == "polynomial") spec = PolynomialKernel{degree, gamma.value_or(1.0), coef0};
    else if (type == "rbf" || type == "gaussian") spec = RbfKernel{gamma.value_or(1.0)};
    else if (type == "sigmoid") spec = SigmoidKernel{gamma.value_or(1.0), coef0};
    else
        throw std::invalid_argument("unknown kernel type '" + type + "'");
    validate_kernel(spec);
    return PyKernel{spec};
}

py::dict metrics_dict(const MetricReport& r) {
    py::dict d;
    d["accuracy"] = r.accuracy;
    d["auc"] = r.auc;
    d["precision_no"] = r.no_class.precision;
    d["precision_yes"] = r.yes_class.precision;
    d["recall_no"] = r.no_class.recall;
    d["recall_yes"] = r.yes_class.recall;
    d["f1_no"] = r.no_class.f1;
    d["f1_yes"] = r.yes_class.f1;
    py::dict cm;
    cm["tp"] = r.confusion.tp;
    cm["fp"] = r.confusion.fp;
    cm["tn"] = r.confusion.tn;
    cm["fn"] = r.confusion.fn;
    d["confusion"] = cm;
    std::vector<std::pair<double, double>> roc;
    for (const auto& p : r.roc.points) roc.emplace_back(p.fpr, p.tpr);
    d["roc"] = roc;
    d["degenerate"] = r.degenerate;
    return d;
}

}  // namespace

PYBIND11_MODULE(asdml, m) {
    m.doc() = "Tabular screening classifiers: ingest, seven learners, metrics, benchmark runner";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<TrainError>(m, "TrainError");

    py::class_<RawTable>(m, "RawTable")
        .def_property_readonly("n_rows", &RawTable::n_rows)
        .def_property_readonly("n_cols", &RawTable::n_cols)
        .def_property_readonly("attribute_names",
                               [](const RawTable& t) {
                                   std::vector<std::string> names;
                                   for (const auto& a : t.schema) names.push_back(a.name);
                                   return names;
                               })
        .def("cell",
             [](const RawTable& t, std::size_t row, std::size_t col) -> py::object {
                 const auto& cell = t.rows.at(row).at(col);
                 if (!cell) return py::none();
                 return py::str(*cell);
             })
        .def("__repr__", [](const RawTable& t) {
            return "<RawTable " + std::to_string(t.n_rows()) + "x" + std::to_string(t.n_cols()) +
                   ">";
        });

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](const std::vector<std::vector<double>>& features,
                         const std::vector<int>& labels,
                         const std::vector<std::string>& names) {
                 Dataset ds;
                 ds.features = to_matrix(features);
                 ds.labels = labels;
                 ds.feature_names = names.empty()
                                        ? std::vector<std::string>(ds.features.cols, "")
                                        : names;
                 if (ds.labels.size() != ds.features.rows)
                     throw std::invalid_argument("labels/features length mismatch");
                 return ds;
             }),
             py::arg("features"), py::arg("labels"),
             py::arg("feature_names") = std::vector<std::string>{})
        .def_property_readonly("features",
                               [](const Dataset& ds) { return from_matrix(ds.features); })
        .def_property_readonly("labels", [](const Dataset& ds) { return ds.labels; })
        .def_property_readonly("feature_names",
                               [](const Dataset& ds) { return ds.feature_names; })
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("dim", &Dataset::dim)
        .def("__repr__", [](const Dataset& ds) {
            return "<Dataset " + std::to_string(ds.n()) + "x" + std::to_string(ds.dim()) + ">";
        });

    py::class_<PyKernel>(m, "Kernel").def("__repr__", [](const PyKernel& k) {
        return "<Kernel " + kernel_name(k.spec) + ">";
    });

    py::class_<PyModel>(m, "Model")
        .def_property_readonly("family",
                               [](const PyModel& m_) { return model_family(m_.model); })
        .def("predict",
             [](const PyModel& m_, const std::vector<double>& x) {
                 const Prediction p = predict(m_.model, x);
                 return py::make_tuple(p.label, p.score);
             })
        .def("predict_many",
             [](const PyModel& m_, const std::vector<std::vector<double>>& rows) {
                 std::vector<std::pair<int, double>> out;
                 for (const auto& row : rows) {
                     const Prediction p = predict(m_.model, row);
                     out.emplace_back(p.label, p.score);
                 }
                 return out;
             })
        .def("to_json", [](const PyModel& m_) { return model_to_json(m_.model); })
        .def("__repr__", [](const PyModel& m_) {
            return "<Model " + model_family(m_.model) + ">";
        });

    // ingest
    m.def("parse_arff", [](const std::string& text) { return parse_arff(text); },
          py::arg("text"));
    m.def("parse_csv", &parse_csv, py::arg("text"), py::arg("schema_text"));
    m.def(
        "load_table",
        [](const std::string& path, const std::string& format, const std::string& schema_path) {
            std::optional<TableFormat> fmt;
            if (format == "arff") fmt = TableFormat::Arff;
            else if (format == "csv") fmt = TableFormat::Csv;
            else if (format != "auto")
                throw std::invalid_argument("format must be auto, arff or csv");
            return load_table(path, fmt, schema_path);
        },
        py::arg("path"), py::arg("format") = "auto", py::arg("schema_path") = "");
    m.def("write_arff", &write_arff, py::arg("table"), py::arg("relation") = "data");
    m.def("merge_tables", &merge_tables, py::arg("tables"));
    m.def(
        "drop_missing",
        [](const RawTable& t) {
            const DropResult r = drop_missing(t);
            return py::make_tuple(r.table, r.dropped);
        },
        py::arg("table"));
    m.def("encode", &encode, py::arg("table"),
          py::arg("drop_columns") = std::vector<std::string>{});
    m.def(
        "split",
        [](const Dataset& ds, double fraction, std::uint64_t seed) {
            const SplitResult r = split(ds, fraction, seed);
            return py::make_tuple(r.train, r.test);
        },
        py::arg("data"), py::arg("train_fraction"), py::arg("seed"));
    m.def(
        "standardize",
        [](const Dataset& train, const Dataset& test) {
            const StandardizeResult r = standardize(train, test);
            return py::make_tuple(r.train, r.test,
                                  py::make_tuple(r.params.means, r.params.stds));
        },
        py::arg("train"), py::arg("test"));

    // kernels
    m.def("make_kernel", &make_kernel, py::arg("type"), py::arg("gamma") = py::none(),
          py::arg("degree") = 3, py::arg("coef0") = 0.0);
    m.def(
        "kernel_eval",
        [](const PyKernel& k, const std::vector<double>& x, const std::vector<double>& y) {
            return kernel_eval(k.spec, x, y);
        },
        py::arg("kernel"), py::arg("x"), py::arg("y"));
    m.def(
        "gram_matrix",
        [](const PyKernel& k, const std::vector<std::vector<double>>& rows) {
            return from_matrix(gram_matrix(k.spec, to_matrix(rows)));
        },
        py::arg("kernel"), py::arg("points"));

    // classifiers
    m.def(
        "fit_naive_bayes",
        [](const Dataset& train, double alpha) {
            return PyModel{fit_naive_bayes(train, {alpha})};
        },
        py::arg("train"), py::arg("alpha") = 1.0);
    m.def(
        "fit_knn", [](const Dataset& train, int k) { return PyModel{fit_knn(train, {k})}; },
        py::arg("train"), py::arg("k") = 5);
    m.def(
        "fit_logistic",
        [](const Dataset& train, double learning_rate, double l2_lambda, int max_iters,
           double grad_tol) {
            return PyModel{fit_logistic(train, {learning_rate, l2_lambda, max_iters, grad_tol})};
        },
        py::arg("train"), py::arg("learning_rate") = 0.1, py::arg("l2_lambda") = 1e-4,
        py::arg("max_iters") = 2000, py::arg("grad_tol") = 1e-6);
    m.def(
        "fit_gradient_boost",
        [](const Dataset& train, int rounds, int max_depth, double shrinkage) {
            return PyModel{fit_gradient_boost(train, {rounds, max_depth, shrinkage})};
        },
        py::arg("train"), py::arg("rounds") = 100, py::arg("max_depth") = 3,
        py::arg("shrinkage") = 0.1);
    m.def(
        "fit_decision_tree",
        [](const Dataset& train, int max_depth, int min_leaf) {
            return PyModel{fit_decision_tree(train, {max_depth, min_leaf})};
        },
        py::arg("train"), py::arg("max_depth") = 10, py::arg("min_leaf") = 2);
    m.def(
        "fit_svm",
        [](const Dataset& train, double C, const std::optional<PyKernel>& kernel, double tol,
           double eps, int max_passes) {
            const KernelSpec spec = kernel ? kernel->spec : KernelSpec(RbfKernel{1.0});
            return PyModel{fit_svm(train, {C, spec, tol, eps, max_passes})};
        },
        py::arg("train"), py::arg("C") = 1.0, py::arg("kernel") = py::none(),
        py::arg("tol") = 1e-3, py::arg("eps") = 1e-5, py::arg("max_passes") = 10);
    m.def(
        "fit_mlp",
        [](const Dataset& train, int hidden_units, double learning_rate, int epochs,
           std::uint64_t init_seed) {
            return PyModel{fit_mlp(train, {hidden_units, learning_rate, epochs, init_seed})};
        },
        py::arg("train"), py::arg("hidden_units") = 16, py::arg("learning_rate") = 0.01,
        py::arg("epochs") = 200, py::arg("init_seed") = 0);
    m.def(
        "model_from_json",
        [](const std::string& text) { return PyModel{model_from_json(text)}; },
        py::arg("text"));

    // metrics
    m.def(
        "confusion",
        [](const std::vector<int>& truth, const std::vector<int>& predicted) {
            const ConfusionMatrix cm = confusion(truth, predicted);
            py::dict d;
            d["tp"] = cm.tp;
            d["fp"] = cm.fp;
            d["tn"] = cm.tn;
            d["fn"] = cm.fn;
            return d;
        },
        py::arg("truth"), py::arg("predicted"));
    m.def(
        "evaluate",
        [](const std::vector<int>& truth, const std::vector<int>& predicted,
           const std::vector<double>& scores) {
            return metrics_dict(evaluate(truth, predicted, scores));
        },
        py::arg("truth"), py::arg("predicted"), py::arg("scores"));
    m.def(
        "roc_points",
        [](const std::vector<double>& scores, const std::vector<int>& truth) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : roc_points(scores, truth).points)
                out.emplace_back(p.fpr, p.tpr);
            return out;
        },
        py::arg("scores"), py::arg("truth"));
    m.def(
        "auc",
        [](const std::vector<std::pair<double, double>>& points) {
            RocCurve curve;
            for (const auto& [fpr, tpr] : points) curve.points.push_back({fpr, tpr});
            return auc(curve);
        },
        py::arg("points"));
    m.def(
        "auc_pairwise_oracle",
        [](const std::vector<double>& scores, const std::vector<int>& truth) {
            return auc_pairwise_oracle(scores, truth);
        },
        py::arg("scores"), py::arg("truth"));

    // runner
    m.def(
        "run_experiment",
        [](const std::string& config_path, bool write_files) {
            const ExperimentConfig config = load_config(config_path);
            const ReportBundle bundle = run_experiment(config);
            if (write_files) write_report_files(bundle, config.out_dir);
            return report_to_json(bundle).dump();
        },
        py::arg("config_path"), py::arg("write_files") = true,
        "Runs the benchmark described by a config file; returns the report JSON text.");
}

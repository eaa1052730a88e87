#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "asdml/errors.hpp"
#include "asdml/rng.hpp"
#include "asdml/runner.hpp"
#include "asdml/table.hpp"
#include "test_util.hpp"

using namespace asdml;
namespace fs = std::filesystem;

namespace {

// Small screening-style ARFF: three binary items, one numeric column, one
// categorical column, class = at least two items set.
std::string synthetic_arff(std::size_t rows, std::uint64_t seed) {
    RawTable t;
    t.schema = {
        {"A1_Score", AttrKind::BinaryScore, {"0", "1"}},
        {"A2_Score", AttrKind::BinaryScore, {"0", "1"}},
        {"A3_Score", AttrKind::BinaryScore, {"0", "1"}},
        {"age", AttrKind::Numeric, {}},
        {"ethnicity", AttrKind::Categorical, {"Asian", "Latino", "White"}},
        {"Class/ASD", AttrKind::ClassLabel, {"NO", "YES"}},
    };
    SplitMix64 rng(seed);
    const char* eth[] = {"Asian", "Latino", "White"};
    for (std::size_t r = 0; r < rows; ++r) {
        int total = 0;
        std::vector<Cell> row;
        for (int q = 0; q < 3; ++q) {
            const int v = static_cast<int>(rng.next_below(2));
            total += v;
            row.emplace_back(v ? "1" : "0");
        }
        row.emplace_back(std::to_string(18 + rng.next_below(40)));
        row.emplace_back(eth[rng.next_below(3)]);
        row.emplace_back(total >= 2 ? "YES" : "NO");
        t.rows.push_back(std::move(row));
    }
    return write_arff(t, "synthetic");
}

ExperimentConfig quick_config(const fs::path& dir, const std::string& extra = "") {
    const std::string text = R"({
        "data": [")" + (dir / "data.arff").string() + R"("],
        "seed": 5,
        "classifiers": ["naive_bayes", "knn", "decision_tree"],
        "kernels": ["rbf"],
        "sample_rows": 4)" + extra + "\n}";
    return parse_config(text);
}

}  // namespace

TEST_CASE("run_experiment pipeline and determinism") {
    const auto dir = test_util::make_temp_dir("runner");
    test_util::write_file(dir / "data.arff", synthetic_arff(90, 42));
    ExperimentConfig cfg = quick_config(dir, ", \"repeat\": 2");
    cfg.out_dir = (dir / "out").string();

    const ReportBundle bundle = run_experiment(cfg);
    CHECK(bundle.meta.rows_loaded == 90);
    CHECK(bundle.meta.rows_dropped == 0);
    CHECK(bundle.meta.n_train == 63);
    CHECK(bundle.meta.n_test == 27);
    CHECK(bundle.meta.seeds == std::vector<std::uint64_t>{5, 6});
    REQUIRE(bundle.classifiers.size() == 3);
    REQUIRE(bundle.kernels.size() == 1);
    CHECK(bundle.classifiers[0].per_seed.size() == 2);

    // Byte-identical reports from the same config.
    const ReportBundle again = run_experiment(cfg);
    CHECK(report_to_json(bundle).dump() == report_to_json(again).dump());

    // Changing only the seed changes the split membership.
    ExperimentConfig other = cfg;
    other.seed = 6;
    const ReportBundle shifted = run_experiment(other);
    CHECK(report_to_json(shifted).dump() != report_to_json(bundle).dump());
}

TEST_CASE("report embeds a config echo that reproduces the run") {
    const auto dir = test_util::make_temp_dir("echo");
    test_util::write_file(dir / "data.arff", synthetic_arff(60, 9));
    const ExperimentConfig cfg = quick_config(dir);
    const ReportBundle bundle = run_experiment(cfg);
    const auto echo = report_to_json(bundle).at("config").dump();
    const ReportBundle re_run = run_experiment(parse_config(echo));
    CHECK(report_to_json(re_run).dump() == report_to_json(bundle).dump());
}

TEST_CASE("single-classifier config yields a single report") {
    const auto dir = test_util::make_temp_dir("single");
    test_util::write_file(dir / "data.arff", synthetic_arff(40, 3));
    const std::string text = R"({
        "data": [")" + (dir / "data.arff").string() + R"("],
        "classifiers": ["knn"], "kernels": []
    })";
    const ReportBundle bundle = run_experiment(parse_config(text));
    CHECK(bundle.classifiers.size() == 1);
    CHECK(bundle.classifiers[0].name == "kNN");
    CHECK(bundle.kernels.empty());
}

TEST_CASE("comparison tables carry the canonical header and 3-decimal cells") {
    const auto dir = test_util::make_temp_dir("tables");
    test_util::write_file(dir / "data.arff", synthetic_arff(80, 11));
    const std::string text = R"({
        "data": [")" + (dir / "data.arff").string() + R"("],
        "classifiers": ["naive_bayes", "knn", "logistic",
                        {"type": "gradient_boost", "rounds": 10},
                        "svm", "decision_tree", {"type": "mlp", "epochs": 20}],
        "kernels": ["polynomial", "gaussian", "sigmoid"]
    })";
    const ReportBundle bundle = run_experiment(parse_config(text));
    const std::string table1 = compare_table_csv(bundle.classifiers);
    CHECK(table1.substr(0, table1.find('\n')) == ",NB,kNN,LR,GB,SVM,DT,MLP");
    const std::string table2 = compare_table_csv(bundle.kernels);
    CHECK(table2.substr(0, table2.find('\n')) == ",Polynomial,Gaussian,Sigmoid");

    // Eight metric rows in both tables.
    int newlines = 0;
    for (const char c : table1)
        if (c == '\n') ++newlines;
    CHECK(newlines == 9);
    CHECK(table1.find("Acc,") != std::string::npos);
    CHECK(table1.find("F1 (yes),") != std::string::npos);

    // Every cell mirrors its mean metric at exactly 3 decimals.
    auto row_values = [](const MeanMetrics& m) {
        return std::vector<double>{m.accuracy,         m.auc,
                                   m.no_class.precision, m.yes_class.precision,
                                   m.no_class.recall,  m.yes_class.recall,
                                   m.no_class.f1,      m.yes_class.f1};
    };
    for (const auto* group : {&bundle.classifiers, &bundle.kernels}) {
        const std::string table = compare_table_csv(*group);
        std::vector<std::vector<std::string>> cells;
        std::istringstream lines(table);
        std::string line;
        std::getline(lines, line);  // header
        while (std::getline(lines, line)) {
            std::vector<std::string> row;
            std::istringstream fields(line);
            std::string cell;
            while (std::getline(fields, cell, ',')) row.push_back(cell);
            cells.push_back(row);
        }
        REQUIRE(cells.size() == 8);
        for (std::size_t r = 0; r < 8; ++r) {
            REQUIRE(cells[r].size() == group->size() + 1);
            for (std::size_t c = 0; c < group->size(); ++c) {
                char expected[16];
                std::snprintf(expected, sizeof(expected), "%.3f",
                              row_values((*group)[c].mean)[r]);
                CHECK(cells[r][c + 1] == expected);
            }
        }
    }
}

TEST_CASE("sample comparison slices the base-seed test rows") {
    const auto dir = test_util::make_temp_dir("sample");
    test_util::write_file(dir / "data.arff", synthetic_arff(50, 21));
    const ReportBundle bundle = run_experiment(quick_config(dir));

    const SampleComparison empty = sample_comparison(bundle, 0);
    CHECK(empty.actual.empty());
    CHECK(sample_comparison_csv(empty) == "row,actual,NB,kNN,DT,Gaussian\n");

    const SampleComparison full = sample_comparison(bundle, bundle.meta.n_test);
    CHECK(full.actual.size() == bundle.meta.n_test);
    CHECK_THROWS_AS(sample_comparison(bundle, bundle.meta.n_test + 1), DataError);

    // Kernel model predictions are included alongside the classifiers.
    REQUIRE(full.model_names.size() == 4);
    CHECK(full.model_names[3] == "Gaussian");
}

TEST_CASE("roc svg structure") {
    RocCurve perfect;
    perfect.points = {{0, 0}, {0, 1}, {1, 1}};
    RocCurve diagonal;
    diagonal.points = {{0, 0}, {1, 1}};
    const std::string svg = roc_svg({{"perfect", perfect}, {"chance", diagonal}});

    CHECK(svg.find("<svg") == 0);
    std::size_t polylines = 0, at = 0;
    while ((at = svg.find("<polyline", at)) != std::string::npos) {
        ++polylines;
        at += 9;
    }
    CHECK(polylines == 2);
    CHECK(svg.find("perfect (AUC = 1.000)") != std::string::npos);
    CHECK(svg.find("chance (AUC = 0.500)") != std::string::npos);
    // Plotted start (0,0) and end (1,1) corners of the unit square.
    CHECK(svg.find("64.00,464.00") != std::string::npos);
    CHECK(svg.find("504.00,24.00") != std::string::npos);
    CHECK_THROWS_AS(roc_svg({}), DataError);
}

TEST_CASE("write_report_files emits the full bundle") {
    const auto dir = test_util::make_temp_dir("files");
    test_util::write_file(dir / "data.arff", synthetic_arff(60, 33));
    ExperimentConfig cfg = quick_config(dir);
    const ReportBundle bundle = run_experiment(cfg);
    const std::string out = (dir / "out").string();
    write_report_files(bundle, out);

    for (const char* name : {"report.json", "table1.csv", "table2.csv", "roc_all.svg",
                             "roc_NB.csv", "roc_kNN.csv", "roc_DT.csv", "roc_Gaussian.csv",
                             "sample_comparison.csv"})
        CHECK(fs::exists(fs::path(out) / name));

    const std::string roc_csv = test_util::read_file(fs::path(out) / "roc_NB.csv");
    CHECK(roc_csv.substr(0, 8) == "fpr,tpr\n");

    // The emitted SVG reproduces from the report alone.
    const std::string report = test_util::read_file(fs::path(out) / "report.json");
    CHECK(roc_svg_from_report(report) == test_util::read_file(fs::path(out) / "roc_all.svg"));
}

TEST_CASE("cleaning is reflected in the metadata") {
    const auto dir = test_util::make_temp_dir("clean");
    const std::string fixture =
        test_util::read_file(fs::path(ASDML_FIXTURE_DIR) / "missing.arff");
    test_util::write_file(dir / "data.arff", fixture);
    // 10 rows, 4 with missing cells; add classifiers that tolerate n=6.
    const std::string text = R"({
        "data": [")" + (dir / "data.arff").string() + R"("],
        "classifiers": [{"type": "knn", "k": 1}], "kernels": [],
        "train_fraction": 0.68, "seed": 2
    })";
    const ReportBundle bundle = run_experiment(parse_config(text));
    CHECK(bundle.meta.rows_loaded == 10);
    CHECK(bundle.meta.rows_dropped == 4);
    CHECK(bundle.meta.rows_used == 6);
}

TEST_CASE("empty post-cleaning dataset is a data error") {
    const auto dir = test_util::make_temp_dir("empty");
    const std::string arff =
        "@relation r\n@attribute a {0,1}\n@attribute Class/ASD {NO,YES}\n@data\n?,NO\n?,YES\n";
    test_util::write_file(dir / "data.arff", arff);
    const std::string text =
        R"({"data": [")" + (dir / "data.arff").string() + R"("], "classifiers": ["knn"]})";
    CHECK_THROWS_AS(run_experiment(parse_config(text)), DataError);
}

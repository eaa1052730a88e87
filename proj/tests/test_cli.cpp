#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "asdml/rng.hpp"
#include "asdml/table.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd =
        std::string(ASDBENCH_BIN) + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string small_arff() {
    asdml::RawTable t;
    t.schema = {
        {"A1_Score", asdml::AttrKind::BinaryScore, {"0", "1"}},
        {"A2_Score", asdml::AttrKind::BinaryScore, {"0", "1"}},
        {"Class/ASD", asdml::AttrKind::ClassLabel, {"NO", "YES"}},
    };
    asdml::SplitMix64 rng(77);
    for (int r = 0; r < 40; ++r) {
        const int a = static_cast<int>(rng.next_below(2));
        const int b = static_cast<int>(rng.next_below(2));
        t.rows.push_back({asdml::Cell(a ? "1" : "0"), asdml::Cell(b ? "1" : "0"),
                          asdml::Cell(a + b == 2 ? "YES" : "NO")});
    }
    return asdml::write_arff(t, "cli");
}

}  // namespace

TEST_CASE("cli run, roc and inspect round trip with exit code 0") {
    const auto dir = test_util::make_temp_dir("cli");
    test_util::write_file(dir / "data.arff", small_arff());
    const std::string config = R"({
        "data": [")" + (dir / "data.arff").string() + R"("],
        "classifiers": [{"type": "knn", "k": 3}, "naive_bayes"],
        "kernels": ["rbf"],
        "out_dir": ")" + (dir / "out").string() + R"("
    })";
    test_util::write_file(dir / "config.json", config);

    CHECK(run_cli("run --config " + (dir / "config.json").string() + " --seed 9",
                  dir / "run.log") == 0);
    CHECK(fs::exists(dir / "out" / "report.json"));
    CHECK(fs::exists(dir / "out" / "table1.csv"));
    CHECK(fs::exists(dir / "out" / "roc_all.svg"));
    // The --seed override lands in the report.
    const std::string report = test_util::read_file(dir / "out" / "report.json");
    CHECK(report.find("\"seeds\": [\n      9\n    ]") != std::string::npos);

    CHECK(run_cli("roc --report " + (dir / "out" / "report.json").string() + " --out " +
                      (dir / "roc.svg").string(),
                  dir / "roc.log") == 0);
    CHECK(fs::exists(dir / "roc.svg"));

    CHECK(run_cli("inspect --data " + (dir / "data.arff").string(), dir / "inspect.log") == 0);
    const std::string listing = test_util::read_file(dir / "inspect.log");
    CHECK(listing.find("A1_Score") != std::string::npos);
    CHECK(listing.find("binary_score") != std::string::npos);

    // Multiple files produce a merged census.
    const std::string data_dir = ASDML_DATA_DIR;
    CHECK(run_cli("inspect --data " + data_dir + "/child.arff " + data_dir + "/adolescent.arff " +
                      data_dir + "/adult.arff",
                  dir / "inspect2.log") == 0);
    const std::string merged = test_util::read_file(dir / "inspect2.log");
    CHECK(merged.find("merged: 1250 rows") != std::string::npos);
}

TEST_CASE("cli exit codes distinguish config, data and training failures") {
    const auto dir = test_util::make_temp_dir("cli_err");
    test_util::write_file(dir / "data.arff", small_arff());

    // 1: malformed config (unknown key).
    test_util::write_file(dir / "bad_key.json",
                          R"({"data": ["x.arff"], "nope": 1})");
    CHECK(run_cli("run --config " + (dir / "bad_key.json").string(), dir / "e1.log") == 1);

    // 1: missing required CLI option.
    CHECK(run_cli("run", dir / "e1b.log") == 1);

    // 2: unreadable data file.
    test_util::write_file(dir / "no_data.json", R"({"data": ["missing_file.arff"]})");
    CHECK(run_cli("run --config " + (dir / "no_data.json").string(), dir / "e2.log") == 2);

    // 3: training failure (k exceeds the training size).
    test_util::write_file(dir / "train_fail.json", R"({
        "data": [")" + (dir / "data.arff").string() + R"("],
        "classifiers": [{"type": "knn", "k": 39}], "kernels": []
    })");
    CHECK(run_cli("run --config " + (dir / "train_fail.json").string(), dir / "e3.log") == 3);

    // 2: roc on a non-report file.
    test_util::write_file(dir / "not_report.json", "{}");
    CHECK(run_cli("roc --report " + (dir / "not_report.json").string() + " --out " +
                      (dir / "x.svg").string(),
                  dir / "e4.log") == 2);
}

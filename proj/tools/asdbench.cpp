#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "asdml/config.hpp"
#include "asdml/errors.hpp"
#include "asdml/runner.hpp"
#include "asdml/table.hpp"
#include "asdml/table_ops.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitTrain = 3;

int run_command(const std::string& config_path, const std::optional<std::string>& out_dir,
                const std::optional<std::uint64_t>& seed, const std::optional<int>& repeat) {
    asdml::ExperimentConfig config = asdml::load_config(config_path);
    if (out_dir) config.out_dir = *out_dir;
    if (seed) config.seed = *seed;
    if (repeat) {
        if (*repeat < 1) throw asdml::ConfigError("--repeat must be >= 1");
        config.repeat = *repeat;
    }

    const asdml::ReportBundle bundle = asdml::run_experiment(config);
    asdml::write_report_files(bundle, config.out_dir);

    std::cout << "rows loaded: " << bundle.meta.rows_loaded
              << "  dropped (missing values): " << bundle.meta.rows_dropped
              << "  used: " << bundle.meta.rows_used << "\n";
    std::cout << "encoded features: " << bundle.meta.encoded_dim
              << "  train/test: " << bundle.meta.n_train << "/" << bundle.meta.n_test
              << "  seeds: " << bundle.meta.seeds.size() << "\n\n";
    if (!bundle.classifiers.empty()) {
        std::cout << "Classifier comparison (mean over seeds)\n"
                  << asdml::compare_table_text(bundle.classifiers) << "\n";
    }
    if (!bundle.kernels.empty()) {
        std::cout << "SVM kernel comparison (mean over seeds)\n"
                  << asdml::compare_table_text(bundle.kernels) << "\n";
    }
    std::cout << "report written to " << config.out_dir << "/report.json\n";
    return kExitOk;
}

int roc_command(const std::string& report_path, const std::string& out_path) {
    std::ifstream in(report_path, std::ios::binary);
    if (!in) throw asdml::DataError("cannot open report '" + report_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string svg = asdml::roc_svg_from_report(ss.str());
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw asdml::DataError("cannot write '" + out_path + "'");
    out << svg;
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int inspect_command(const std::vector<std::string>& paths, const std::string& format,
                    const std::string& schema_path) {
    std::optional<asdml::TableFormat> fmt;
    if (format == "arff") fmt = asdml::TableFormat::Arff;
    else if (format == "csv") fmt = asdml::TableFormat::Csv;

    std::vector<asdml::RawTable> tables;
    for (const auto& path : paths) {
        const asdml::RawTable table = asdml::load_table(path, fmt, schema_path);
        tables.push_back(table);
        std::cout << path << ": " << table.n_rows() << " rows, " << table.n_cols()
                  << " attributes\n";
        for (std::size_t c = 0; c < table.schema.size(); ++c) {
            const auto& attr = table.schema[c];
            std::size_t missing = 0;
            for (const auto& row : table.rows)
                if (!row[c]) ++missing;
            std::cout << "  " << attr.name << " [" << asdml::attr_kind_name(attr.kind) << "]";
            if (attr.kind != asdml::AttrKind::Numeric)
                std::cout << " (" << attr.values.size() << " values)";
            if (missing > 0) std::cout << "  missing: " << missing;
            std::cout << "\n";
        }
        const auto cleaned = asdml::drop_missing(table);
        std::cout << "  rows with missing cells: " << cleaned.dropped << "\n";
    }
    if (tables.size() > 1) {
        const asdml::RawTable merged = asdml::merge_tables(tables);
        const auto cleaned = asdml::drop_missing(merged);
        std::cout << "merged: " << merged.n_rows() << " rows, " << cleaned.dropped
                  << " with missing cells, " << cleaned.table.n_rows() << " complete\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ASD screening classifier benchmark"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> repeat;
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory (overrides config)");
    run->add_option("--seed", seed, "Base split seed (overrides config)");
    run->add_option("--repeat", repeat, "Number of seeds to run (overrides config)");

    auto* roc = app.add_subcommand("roc", "Re-emit the combined ROC SVG from a report");
    std::string report_path, svg_path;
    roc->add_option("--report", report_path, "report.json produced by `run`")->required();
    roc->add_option("--out", svg_path, "Output SVG path")->required();

    auto* inspect = app.add_subcommand("inspect", "Show schema and missing-value census");
    std::vector<std::string> data_paths;
    std::string format = "auto", schema_path;
    inspect->add_option("--data", data_paths, "Dataset files")->required()->expected(-1);
    inspect->add_option("--format", format, "Force format: arff or csv")
        ->check(CLI::IsMember({"auto", "arff", "csv"}));
    inspect->add_option("--schema", schema_path, "Sidecar schema for CSV input");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_command(config_path, out_dir, seed, repeat);
        if (roc->parsed()) return roc_command(report_path, svg_path);
        return inspect_command(data_paths, format, schema_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const asdml::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const asdml::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const asdml::TrainError& e) {
        std::cerr << "training error: " << e.what() << "\n";
        return kExitTrain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTrain;
    }
}

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace asdml {

enum class AttrKind { BinaryScore, Boolean, Categorical, Numeric, ClassLabel };

std::string attr_kind_name(AttrKind kind);

struct AttributeSpec {
    std::string name;
    AttrKind kind = AttrKind::Numeric;
    // Declared value set, in declaration order. Used by Categorical,
    // BinaryScore, Boolean and ClassLabel attributes; empty for Numeric.
    std::vector<std::string> values;

    bool operator==(const AttributeSpec&) const = default;
};

// A missing cell carries no value; present cells keep the source text
// (trimmed, unquoted) so a parsed table can be re-serialized losslessly.
using Cell = std::optional<std::string>;

struct RawTable {
    std::vector<AttributeSpec> schema;
    std::vector<std::vector<Cell>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return schema.size(); }

    // Index of the ClassLabel attribute, or -1 when absent.
    int class_index() const;
    int column_index(const std::string& name) const;

    bool operator==(const RawTable&) const = default;
};

enum class TableFormat { Arff, Csv };

struct ParseOptions {
    // Attribute treated as the class label. Matched case-insensitively;
    // defaults cover the screening files ("Class/ASD") and plain "class".
    std::vector<std::string> class_names = {"class/asd", "class"};
};

// ARFF subset: @relation, @attribute name {v,...}, @attribute name numeric,
// @data, '%' comments, '?' missing, single-quoted tokens.
RawTable parse_arff(const std::string& text, const ParseOptions& opts = {});

// RFC-4180-style CSV with a header row. Attribute kinds come from a sidecar
// schema ("name=kind" lines, kind in {binary_score, boolean, categorical,
// numeric, class_label}). Value sets for non-numeric kinds are collected
// from the data (sorted). Missing marker: empty cell or '?'.
RawTable parse_csv(const std::string& text, const std::string& schema_text);

RawTable parse_table(const std::string& text, TableFormat format,
                     const std::string& csv_schema_text = "",
                     const ParseOptions& opts = {});

// Re-emits a table as ARFF; parse_arff(write_arff(t)) == t.
std::string write_arff(const RawTable& table, const std::string& relation = "data");

// Loads and parses a file, inferring the format from the extension when
// format is not forced. csv_schema_path is required for CSV input.
RawTable load_table(const std::string& path,
                    std::optional<TableFormat> format = std::nullopt,
                    const std::string& csv_schema_path = "");

}  // namespace asdml

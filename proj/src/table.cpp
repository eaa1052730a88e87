#include "asdml/table.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "asdml/errors.hpp"

namespace asdml {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool iequals(const std::string& a, const std::string& b) { return lower(a) == lower(b); }

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw DataError("line " + std::to_string(line_no) + ": " + what);
}

// Splits a comma-separated ARFF payload honoring single-quoted tokens.
std::vector<std::string> split_arff_fields(const std::string& text, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false, was_quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '\'')
                quoted = false;
            else
                cur += c;
        } else if (c == '\'') {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
        } else {
            cur += c;
        }
    }
    if (quoted) fail(line_no, "unterminated quote");
    fields.push_back(was_quoted ? cur : trim(cur));
    return fields;
}

bool is_yes_no_set(const std::vector<std::string>& values) {
    if (values.size() != 2) return false;
    std::set<std::string> low;
    for (const auto& v : values) low.insert(lower(v));
    return low == std::set<std::string>{"no", "yes"};
}

bool is_binary_set(const std::vector<std::string>& values) {
    if (values.size() != 2) return false;
    std::set<std::string> s(values.begin(), values.end());
    return s == std::set<std::string>{"0", "1"};
}

bool matches_class_name(const std::string& name, const ParseOptions& opts) {
    return std::any_of(opts.class_names.begin(), opts.class_names.end(),
                       [&](const std::string& c) { return iequals(name, c); });
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

void check_cell(const AttributeSpec& attr, const std::string& value, std::size_t line_no) {
    switch (attr.kind) {
        case AttrKind::Numeric: {
            double d;
            if (!parse_double(value, d))
                fail(line_no, "attribute '" + attr.name + "': '" + value + "' is not numeric");
            break;
        }
        case AttrKind::BinaryScore:
            if (value != "0" && value != "1")
                fail(line_no, "attribute '" + attr.name + "': '" + value + "' is not 0/1");
            break;
        case AttrKind::Boolean:
        case AttrKind::ClassLabel: {
            const std::string low = lower(trim(value));
            if (low != "yes" && low != "no")
                fail(line_no, "attribute '" + attr.name + "': '" + value + "' is not yes/no");
            break;
        }
        case AttrKind::Categorical: {
            const bool known = std::any_of(attr.values.begin(), attr.values.end(),
                                           [&](const std::string& v) { return v == value; });
            if (!known)
                fail(line_no,
                     "attribute '" + attr.name + "': value '" + value + "' not in declared set");
            break;
        }
    }
}

AttrKind infer_arff_kind(const std::string& name, const std::vector<std::string>& values,
                         const ParseOptions& opts) {
    if (matches_class_name(name, opts)) return AttrKind::ClassLabel;
    if (is_binary_set(values)) return AttrKind::BinaryScore;
    if (is_yes_no_set(values)) return AttrKind::Boolean;
    return AttrKind::Categorical;
}

bool needs_quoting(const std::string& s) {
    if (s.empty()) return true;
    return s.find_first_of(" ,{}'%\t") != std::string::npos;
}

std::string quoted(const std::string& s) {
    return needs_quoting(s) ? "'" + s + "'" : s;
}

// RFC-4180 CSV line splitter (double quotes, "" escape).
std::vector<std::string> split_csv_fields(const std::string& text, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted_field = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted_field) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted_field = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted_field = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted_field) fail(line_no, "unterminated quote");
    fields.push_back(trim(cur));
    return fields;
}

std::vector<std::string> read_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur)) {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

void validate_schema(const std::vector<AttributeSpec>& schema) {
    std::set<std::string> names;
    int class_count = 0;
    for (const auto& attr : schema) {
        if (!names.insert(lower(attr.name)).second)
            throw DataError("duplicate attribute name '" + attr.name + "'");
        if (attr.kind == AttrKind::ClassLabel) ++class_count;
        if (attr.kind == AttrKind::Categorical && attr.values.empty())
            throw DataError("categorical attribute '" + attr.name + "' has an empty value set");
    }
    if (class_count > 1) throw DataError("more than one class attribute declared");
}

}  // namespace

std::string attr_kind_name(AttrKind kind) {
    switch (kind) {
        case AttrKind::BinaryScore: return "binary_score";
        case AttrKind::Boolean: return "boolean";
        case AttrKind::Categorical: return "categorical";
        case AttrKind::Numeric: return "numeric";
        case AttrKind::ClassLabel: return "class_label";
    }
    return "?";
}

int RawTable::class_index() const {
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema[i].kind == AttrKind::ClassLabel) return static_cast<int>(i);
    return -1;
}

int RawTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema[i].name == name) return static_cast<int>(i);
    return -1;
}

RawTable parse_arff(const std::string& text, const ParseOptions& opts) {
    RawTable table;
    bool in_data = false;
    const auto lines = read_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        std::string line = lines[li];
        // Strip '%' comments, but not inside quoted tokens.
        bool quoted = false;
        for (std::size_t pos = 0; pos < line.size(); ++pos) {
            if (line[pos] == '\'') quoted = !quoted;
            else if (line[pos] == '%' && !quoted) {
                line = line.substr(0, pos);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;

        if (!in_data && line[0] == '@') {
            std::istringstream ls(line);
            std::string keyword;
            ls >> keyword;
            keyword = lower(keyword);
            if (keyword == "@relation") {
                continue;
            } else if (keyword == "@data") {
                in_data = true;
                continue;
            } else if (keyword == "@attribute") {
                std::string rest = trim(line.substr(keyword.size() + 1));
                if (rest.empty()) fail(line_no, "@attribute without a name");
                std::string name;
                std::size_t i = 0;
                if (rest[0] == '\'') {
                    const auto end = rest.find('\'', 1);
                    if (end == std::string::npos) fail(line_no, "unterminated quote");
                    name = rest.substr(1, end - 1);
                    i = end + 1;
                } else {
                    while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])))
                        ++i;
                    name = rest.substr(0, i);
                }
                const std::string decl = trim(rest.substr(i));
                if (decl.empty()) fail(line_no, "attribute '" + name + "' has no type");
                AttributeSpec attr;
                attr.name = name;
                if (decl[0] == '{') {
                    if (decl.back() != '}') fail(line_no, "nominal declaration missing '}'");
                    attr.values = split_arff_fields(decl.substr(1, decl.size() - 2), line_no);
                    for (const auto& v : attr.values)
                        if (v.empty()) fail(line_no, "empty value in nominal declaration");
                    attr.kind = infer_arff_kind(name, attr.values, opts);
                } else {
                    const std::string type = lower(decl);
                    if (type != "numeric" && type != "real" && type != "integer")
                        fail(line_no, "unsupported attribute type '" + decl + "'");
                    attr.kind = AttrKind::Numeric;
                }
                table.schema.push_back(std::move(attr));
                continue;
            } else {
                fail(line_no, "unknown declaration '" + keyword + "'");
            }
        }

        if (!in_data) fail(line_no, "data row before @data");
        if (table.schema.empty()) fail(line_no, "data row without attribute declarations");
        const auto fields = split_arff_fields(line, line_no);
        if (fields.size() != table.schema.size())
            fail(line_no, "row has " + std::to_string(fields.size()) + " cells, expected " +
                              std::to_string(table.schema.size()));
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (fields[c] == "?") {
                row.emplace_back(std::nullopt);
            } else {
                check_cell(table.schema[c], fields[c], line_no);
                row.emplace_back(fields[c]);
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (table.schema.empty()) throw DataError("ARFF input declares no attributes");
    validate_schema(table.schema);
    return table;
}

RawTable parse_csv(const std::string& text, const std::string& schema_text) {
    // Sidecar: one "name=kind" per line, '#' comments.
    std::vector<std::pair<std::string, AttrKind>> kinds;
    {
        const auto lines = read_lines(schema_text);
        for (std::size_t li = 0; li < lines.size(); ++li) {
            std::string line = lines[li];
            if (const auto pos = line.find('#'); pos != std::string::npos)
                line = line.substr(0, pos);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw DataError("schema line " + std::to_string(li + 1) + ": expected name=kind");
            const std::string name = trim(line.substr(0, eq));
            const std::string kind = lower(trim(line.substr(eq + 1)));
            AttrKind k;
            if (kind == "binary_score") k = AttrKind::BinaryScore;
            else if (kind == "boolean") k = AttrKind::Boolean;
            else if (kind == "categorical") k = AttrKind::Categorical;
            else if (kind == "numeric") k = AttrKind::Numeric;
            else if (kind == "class_label") k = AttrKind::ClassLabel;
            else
                throw DataError("schema line " + std::to_string(li + 1) + ": unknown kind '" +
                                kind + "'");
            kinds.emplace_back(name, k);
        }
    }
    if (kinds.empty()) throw DataError("CSV schema declares no attributes");

    const auto lines = read_lines(text);
    std::size_t li = 0;
    while (li < lines.size() && trim(lines[li]).empty()) ++li;
    if (li >= lines.size()) throw DataError("CSV input has no header row");
    const auto header = split_csv_fields(lines[li], li + 1);

    RawTable table;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto it = std::find_if(kinds.begin(), kinds.end(), [&](const auto& nk) {
            return iequals(nk.first, header[c]);
        });
        if (it == kinds.end())
            fail(li + 1, "header column '" + header[c] + "' missing from the schema file");
        table.schema.push_back({header[c], it->second, {}});
    }

    std::vector<std::size_t> row_lines;
    for (++li; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        const auto fields = split_csv_fields(lines[li], li + 1);
        if (fields.size() != table.schema.size())
            fail(li + 1, "row has " + std::to_string(fields.size()) + " cells, expected " +
                             std::to_string(table.schema.size()));
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            if (f.empty() || f == "?")
                row.emplace_back(std::nullopt);
            else
                row.emplace_back(f);
        }
        table.rows.push_back(std::move(row));
        row_lines.push_back(li + 1);
    }

    // Collect observed value sets for nominal kinds, then validate cells.
    for (std::size_t c = 0; c < table.schema.size(); ++c) {
        auto& attr = table.schema[c];
        if (attr.kind == AttrKind::Numeric) continue;
        std::set<std::string> observed;
        for (const auto& row : table.rows)
            if (row[c]) observed.insert(*row[c]);
        attr.values.assign(observed.begin(), observed.end());
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        for (std::size_t c = 0; c < table.schema.size(); ++c)
            if (table.rows[r][c]) check_cell(table.schema[c], *table.rows[r][c], row_lines[r]);

    validate_schema(table.schema);
    return table;
}

RawTable parse_table(const std::string& text, TableFormat format,
                     const std::string& csv_schema_text, const ParseOptions& opts) {
    if (format == TableFormat::Arff) return parse_arff(text, opts);
    return parse_csv(text, csv_schema_text);
}

std::string write_arff(const RawTable& table, const std::string& relation) {
    std::ostringstream out;
    out << "@relation " << quoted(relation) << "\n\n";
    for (const auto& attr : table.schema) {
        out << "@attribute " << quoted(attr.name) << " ";
        if (attr.kind == AttrKind::Numeric) {
            out << "numeric";
        } else {
            out << "{";
            for (std::size_t i = 0; i < attr.values.size(); ++i) {
                if (i) out << ",";
                out << quoted(attr.values[i]);
            }
            out << "}";
        }
        out << "\n";
    }
    out << "\n@data\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            out << (row[c] ? quoted(*row[c]) : std::string("?"));
        }
        out << "\n";
    }
    return out.str();
}

RawTable load_table(const std::string& path, std::optional<TableFormat> format,
                    const std::string& csv_schema_path) {
    auto read_file = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw DataError("cannot open '" + p + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    TableFormat fmt;
    if (format) {
        fmt = *format;
    } else {
        const auto dot = path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot + 1));
        if (ext == "arff") fmt = TableFormat::Arff;
        else if (ext == "csv") fmt = TableFormat::Csv;
        else
            throw DataError("cannot infer format of '" + path + "' (use .arff or .csv)");
    }

    try {
        if (fmt == TableFormat::Arff) return parse_arff(read_file(path));
        if (csv_schema_path.empty())
            throw DataError("CSV input '" + path + "' requires a sidecar schema file");
        return parse_csv(read_file(path), read_file(csv_schema_path));
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

}  // namespace asdml

#include "asdml/table_ops.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "asdml/errors.hpp"
#include "asdml/rng.hpp"

namespace asdml {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_numeric(const std::string& s, const std::string& attr) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(s, &pos);
        if (pos == s.size() && std::isfinite(d)) return d;
    } catch (...) {
    }
    throw DataError("attribute '" + attr + "': cell '" + s + "' is not a finite number");
}

}  // namespace

RawTable merge_tables(const std::vector<RawTable>& tables) {
    if (tables.empty()) throw DataError("merge: no tables given");
    RawTable merged;
    merged.schema = tables.front().schema;

    // Column alignment maps, one per table, in the first table's order.
    std::vector<std::vector<int>> col_maps;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const auto& table = tables[t];
        std::vector<int> map;
        for (auto& attr : merged.schema) {
            int idx = -1;
            for (std::size_t c = 0; c < table.schema.size(); ++c)
                if (lower(table.schema[c].name) == lower(attr.name)) idx = static_cast<int>(c);
            if (idx < 0)
                throw DataError("merge: table " + std::to_string(t + 1) +
                                " lacks attribute '" + attr.name + "'");
            const auto& other = table.schema[static_cast<std::size_t>(idx)];
            if (other.kind != attr.kind)
                throw DataError("merge: attribute '" + attr.name + "' is " +
                                attr_kind_name(attr.kind) + " in one table and " +
                                attr_kind_name(other.kind) + " in another");
            for (const auto& v : other.values)
                if (std::find(attr.values.begin(), attr.values.end(), v) == attr.values.end())
                    attr.values.push_back(v);
            map.push_back(idx);
        }
        if (table.schema.size() != merged.schema.size())
            throw DataError("merge: table " + std::to_string(t + 1) +
                            " has extra attributes not present in the first table");
        col_maps.push_back(std::move(map));
    }

    for (std::size_t t = 0; t < tables.size(); ++t) {
        for (const auto& row : tables[t].rows) {
            std::vector<Cell> aligned(merged.schema.size());
            for (std::size_t c = 0; c < merged.schema.size(); ++c)
                aligned[c] = row[static_cast<std::size_t>(col_maps[t][c])];
            merged.rows.push_back(std::move(aligned));
        }
    }
    return merged;
}

DropResult drop_missing(const RawTable& table) {
    DropResult result;
    result.table.schema = table.schema;
    for (const auto& row : table.rows) {
        const bool complete =
            std::all_of(row.begin(), row.end(), [](const Cell& c) { return c.has_value(); });
        if (complete)
            result.table.rows.push_back(row);
        else
            ++result.dropped;
    }
    return result;
}

Dataset encode(const RawTable& table, const std::vector<std::string>& drop_columns) {
    const int class_col = table.class_index();
    if (class_col < 0) throw DataError("encode: table has no class attribute");

    std::set<std::string> dropped;
    for (const auto& name : drop_columns) dropped.insert(lower(name));

    struct Column {
        std::size_t source;
        AttrKind kind;
        std::string one_hot_value;  // Categorical only
    };
    std::vector<Column> columns;
    Dataset ds;
    for (std::size_t c = 0; c < table.schema.size(); ++c) {
        const auto& attr = table.schema[c];
        if (attr.kind == AttrKind::ClassLabel) continue;
        if (dropped.count(lower(attr.name))) continue;
        if (attr.kind == AttrKind::Categorical) {
            auto values = attr.values;
            std::sort(values.begin(), values.end());
            for (const auto& v : values) {
                columns.push_back({c, attr.kind, v});
                ds.feature_names.push_back(attr.name + "=" + v);
            }
        } else {
            columns.push_back({c, attr.kind, ""});
            ds.feature_names.push_back(attr.name);
        }
    }

    ds.features = Matrix(table.n_rows(), columns.size());
    ds.labels.resize(table.n_rows());
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        const auto& row = table.rows[r];
        for (const auto& cell : row)
            if (!cell) throw DataError("encode: row " + std::to_string(r + 1) + " has a missing cell");
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const auto& col = columns[j];
            const std::string& cell = *row[col.source];
            double v = 0.0;
            switch (col.kind) {
                case AttrKind::BinaryScore:
                    v = cell == "1" ? 1.0 : 0.0;
                    break;
                case AttrKind::Boolean:
                    v = lower(cell) == "yes" ? 1.0 : 0.0;
                    break;
                case AttrKind::Numeric:
                    v = parse_numeric(cell, table.schema[col.source].name);
                    break;
                case AttrKind::Categorical: {
                    const auto& declared = table.schema[col.source].values;
                    if (std::find(declared.begin(), declared.end(), cell) == declared.end())
                        throw DataError("encode: attribute '" + table.schema[col.source].name +
                                        "': unseen value '" + cell + "'");
                    v = cell == col.one_hot_value ? 1.0 : 0.0;
                    break;
                }
                case AttrKind::ClassLabel:
                    break;
            }
            ds.features(r, j) = v;
        }
        ds.labels[r] = lower(*row[static_cast<std::size_t>(class_col)]) == "yes" ? 1 : 0;
    }
    return ds;
}

SplitResult split(const Dataset& data, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw DataError("split: train_fraction must lie in (0, 1)");
    const std::size_t n = data.n();
    if (n < 2) throw DataError("split: need at least 2 rows");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    SplitMix64 rng(seed);
    fisher_yates(order, rng);

    // floor in real arithmetic: the nudge keeps decimal fractions like
    // 0.7 * 90 from landing just below the integer they denote.
    const std::size_t n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(n) + 1e-9));
    if (n_train == 0 || n_train == n)
        throw DataError("split: a part would be empty (n=" + std::to_string(n) +
                        ", fraction=" + std::to_string(train_fraction) + ")");

    auto take = [&](std::size_t begin, std::size_t count) {
        Dataset part;
        part.feature_names = data.feature_names;
        part.features = Matrix(count, data.dim());
        part.labels.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t src = order[begin + i];
            for (std::size_t j = 0; j < data.dim(); ++j)
                part.features(i, j) = data.features(src, j);
            part.labels[i] = data.labels[src];
        }
        return part;
    };
    return {take(0, n_train), take(n_train, n - n_train)};
}

StandardizeResult standardize(const Dataset& train, const Dataset& test) {
    if (train.n() == 0) throw DataError("standardize: empty training split");
    if (test.n() > 0 && test.dim() != train.dim())
        throw DataError("standardize: train and test dimensions differ");

    const std::size_t d = train.dim();
    ScalerParams params;
    params.means.resize(d);
    params.stds.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < train.n(); ++i) sum += train.features(i, j);
        const double mean = sum / static_cast<double>(train.n());
        double sq = 0.0;
        for (std::size_t i = 0; i < train.n(); ++i) {
            const double diff = train.features(i, j) - mean;
            sq += diff * diff;
        }
        params.means[j] = mean;
        params.stds[j] = std::sqrt(sq / static_cast<double>(train.n()));
    }
    return {apply_scaler(train, params), apply_scaler(test, params), params};
}

Dataset apply_scaler(const Dataset& data, const ScalerParams& params) {
    if (data.dim() != params.means.size())
        throw DataError("scaler: dimension mismatch");
    Dataset out = data;
    for (std::size_t j = 0; j < data.dim(); ++j) {
        const double mean = params.means[j];
        const double std_dev = params.stds[j];
        for (std::size_t i = 0; i < data.n(); ++i)
            out.features(i, j) = std_dev == 0.0 ? 0.0 : (data.features(i, j) - mean) / std_dev;
    }
    return out;
}

}  // namespace asdml

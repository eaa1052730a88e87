#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asdml/dataset.hpp"
#include "asdml/table.hpp"

namespace asdml {

// Concatenates tables after aligning columns to the first table's order by
// attribute name. Categorical value sets are unioned (first-occurrence
// order). Same-named attributes must agree on kind.
RawTable merge_tables(const std::vector<RawTable>& tables);

struct DropResult {
    RawTable table;
    std::size_t dropped = 0;
};

// Keeps exactly the rows with no missing cell, preserving order.
DropResult drop_missing(const RawTable& table);

// Numeric encoding of a complete table:
//   binary_score -> 0.0 / 1.0
//   boolean      -> yes = 1.0, no = 0.0 (case-insensitive)
//   categorical  -> one indicator column per value, columns in sorted
//                   value order, named "attr=value"
//   numeric      -> parsed as double
//   class label  -> extracted to labels (YES = 1), not a feature
// Attributes named in drop_columns (case-insensitive) are skipped.
Dataset encode(const RawTable& table, const std::vector<std::string>& drop_columns = {});

struct SplitResult {
    Dataset train;
    Dataset test;
};

// Seed-determined uniform partition: rows are shuffled with Fisher-Yates
// over SplitMix64(seed), the first floor(train_fraction * n) go to train,
// the rest to test, both in shuffle order.
SplitResult split(const Dataset& data, double train_fraction, std::uint64_t seed);

struct StandardizeResult {
    Dataset train;
    Dataset test;
    ScalerParams params;
};

// Per-column (x - mean) / std with population statistics computed on the
// training split only; constant columns map to all zero.
StandardizeResult standardize(const Dataset& train, const Dataset& test);

Dataset apply_scaler(const Dataset& data, const ScalerParams& params);

}  // namespace asdml

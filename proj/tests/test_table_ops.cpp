#include <doctest.h>

#include <cmath>
#include <set>

#include "asdml/errors.hpp"
#include "asdml/rng.hpp"
#include "asdml/table_ops.hpp"

using namespace asdml;

namespace {

RawTable tiny_table(std::size_t rows) {
    RawTable t;
    t.schema = {
        {"A1_Score", AttrKind::BinaryScore, {"0", "1"}},
        {"ethnicity", AttrKind::Categorical, {"Asian", "Latino", "White"}},
        {"Class/ASD", AttrKind::ClassLabel, {"NO", "YES"}},
    };
    const char* eth[] = {"Asian", "Latino", "White"};
    for (std::size_t r = 0; r < rows; ++r) {
        t.rows.push_back({Cell(r % 2 ? "1" : "0"), Cell(eth[r % 3]), Cell(r % 2 ? "YES" : "NO")});
    }
    return t;
}

Dataset random_dataset(std::size_t n, std::size_t d, SplitMix64& rng) {
    Dataset ds;
    ds.features = Matrix(n, d);
    ds.labels.resize(n);
    for (std::size_t j = 0; j < d; ++j) ds.feature_names.push_back("f" + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) ds.features(i, j) = rng.next_double() * 10 - 5;
        ds.labels[i] = static_cast<int>(rng.next_below(2));
    }
    return ds;
}

}  // namespace

TEST_CASE("merge concatenates equal schemas") {
    const RawTable merged = merge_tables({tiny_table(3), tiny_table(2)});
    CHECK(merged.n_rows() == 5);
    CHECK(merged.schema == tiny_table(1).schema);
}

TEST_CASE("merge aligns permuted columns by name and unions value sets") {
    RawTable a = tiny_table(2);
    RawTable b;
    b.schema = {
        {"Class/ASD", AttrKind::ClassLabel, {"NO", "YES"}},
        {"A1_Score", AttrKind::BinaryScore, {"0", "1"}},
        {"ethnicity", AttrKind::Categorical, {"Turkish", "Asian"}},
    };
    b.rows.push_back({Cell("YES"), Cell("1"), Cell("Turkish")});
    const RawTable merged = merge_tables({a, b});
    REQUIRE(merged.n_rows() == 3);
    CHECK(*merged.rows[2][0] == "1");
    CHECK(*merged.rows[2][1] == "Turkish");
    CHECK(*merged.rows[2][2] == "YES");
    CHECK(merged.schema[1].values ==
          std::vector<std::string>{"Asian", "Latino", "White", "Turkish"});
}

TEST_CASE("merge rejects attribute set mismatches") {
    RawTable b = tiny_table(1);
    b.schema[1].name = "relation";
    CHECK_THROWS_WITH_AS(merge_tables({tiny_table(1), b}), doctest::Contains("ethnicity"),
                         DataError);

    RawTable c = tiny_table(1);
    c.schema[0].kind = AttrKind::Categorical;
    CHECK_THROWS_AS(merge_tables({tiny_table(1), c}), DataError);
}

TEST_CASE("drop_missing filters exactly the incomplete rows") {
    RawTable t = tiny_table(5);
    t.rows[1][0] = std::nullopt;
    t.rows[3][1] = std::nullopt;
    const DropResult r = drop_missing(t);
    CHECK(r.dropped == 2);
    REQUIRE(r.table.n_rows() == 3);
    CHECK(r.table.rows[0] == t.rows[0]);
    CHECK(r.table.rows[1] == t.rows[2]);
    CHECK(r.table.rows[2] == t.rows[4]);

    SUBCASE("identity when nothing is missing") {
        const DropResult clean = drop_missing(tiny_table(4));
        CHECK(clean.dropped == 0);
        CHECK(clean.table == tiny_table(4));
    }
    SUBCASE("all rows missing somewhere") {
        RawTable all = tiny_table(3);
        for (auto& row : all.rows) row[2] = std::nullopt;
        const DropResult none = drop_missing(all);
        CHECK(none.dropped == 3);
        CHECK(none.table.n_rows() == 0);
    }
}

TEST_CASE("drop_missing conservation |output| + dropped = |input|") {
    SplitMix64 rng(11);
    for (int iter = 0; iter < 30; ++iter) {
        RawTable t = tiny_table(1 + rng.next_below(20));
        for (auto& row : t.rows)
            if (rng.next_below(3) == 0) row[rng.next_below(row.size())] = std::nullopt;
        const DropResult r = drop_missing(t);
        CHECK(r.table.n_rows() + r.dropped == t.n_rows());
        for (const auto& row : r.table.rows)
            for (const auto& cell : row) CHECK(cell.has_value());
    }
}

TEST_CASE("encode one-hot, passthrough and label extraction") {
    const Dataset ds = encode(tiny_table(6));
    // A1_Score passthrough + 3 ethnicity indicators.
    REQUIRE(ds.feature_names == std::vector<std::string>{"A1_Score", "ethnicity=Asian",
                                                         "ethnicity=Latino", "ethnicity=White"});
    CHECK(ds.features(1, 0) == 1.0);  // cell "1"
    for (std::size_t i = 0; i < ds.n(); ++i) {
        double one_hot_sum = 0.0;
        for (std::size_t j = 1; j < 4; ++j) one_hot_sum += ds.features(i, j);
        CHECK(one_hot_sum == 1.0);
        CHECK(ds.labels[i] == static_cast<int>(i % 2));
        for (std::size_t j = 0; j < ds.dim(); ++j) CHECK(std::isfinite(ds.features(i, j)));
    }
}

TEST_CASE("encode maps YES case-insensitively and drops requested columns") {
    RawTable t = tiny_table(2);
    t.rows[1][2] = Cell("yes");
    const Dataset ds = encode(t, {"ETHNICITY"});
    CHECK(ds.feature_names == std::vector<std::string>{"A1_Score"});
    CHECK(ds.labels[1] == 1);
}

TEST_CASE("encode rejects unseen categorical values and missing cells") {
    RawTable t = tiny_table(2);
    t.rows[0][1] = Cell("Martian");
    CHECK_THROWS_WITH_AS(encode(t), doctest::Contains("Martian"), DataError);

    RawTable m = tiny_table(2);
    m.rows[0][0] = std::nullopt;
    CHECK_THROWS_AS(encode(m), DataError);
}

TEST_CASE("split sizes, determinism and partition") {
    SplitMix64 rng(3);
    const Dataset ds = random_dataset(100, 4, rng);
    const SplitResult parts = split(ds, 0.7, 42);
    CHECK(parts.train.n() == 70);
    CHECK(parts.test.n() == 30);

    const SplitResult again = split(ds, 0.7, 42);
    CHECK(parts.train == again.train);
    CHECK(parts.test == again.test);

    const SplitResult other = split(ds, 0.7, 43);
    CHECK(parts.train != other.train);

    // Union of parts equals the original multiset of rows.
    auto row_key = [&](const Dataset& d, std::size_t i) {
        std::string key;
        for (std::size_t j = 0; j < d.dim(); ++j)
            key += std::to_string(d.features(i, j)) + "|";
        return key + std::to_string(d.labels[i]);
    };
    std::multiset<std::string> original, recombined;
    for (std::size_t i = 0; i < ds.n(); ++i) original.insert(row_key(ds, i));
    for (std::size_t i = 0; i < parts.train.n(); ++i) recombined.insert(row_key(parts.train, i));
    for (std::size_t i = 0; i < parts.test.n(); ++i) recombined.insert(row_key(parts.test, i));
    CHECK(original == recombined);
}

TEST_CASE("split rejects bad fractions") {
    SplitMix64 rng(5);
    const Dataset ds = random_dataset(10, 2, rng);
    CHECK_THROWS_AS(split(ds, 1.0, 1), DataError);
    CHECK_THROWS_AS(split(ds, 0.0, 1), DataError);
    CHECK_THROWS_AS(split(ds, 0.05, 1), DataError);  // empty train part
}

TEST_CASE("standardize uses population statistics from the training part") {
    Dataset train, test;
    train.features = Matrix(2, 1);
    train.features(0, 0) = 0.0;
    train.features(1, 0) = 2.0;
    train.labels = {0, 1};
    train.feature_names = {"x"};
    test.features = Matrix(1, 1);
    test.features(0, 0) = 4.0;
    test.labels = {0};
    test.feature_names = {"x"};

    const StandardizeResult r = standardize(train, test);
    CHECK(r.params.means[0] == 1.0);
    CHECK(r.params.stds[0] == 1.0);
    CHECK(r.train.features(0, 0) == -1.0);
    CHECK(r.train.features(1, 0) == 1.0);
    CHECK(r.test.features(0, 0) == 3.0);
}

TEST_CASE("standardize maps constant columns to zero") {
    Dataset train;
    train.features = Matrix(3, 2, 5.0);
    for (std::size_t i = 0; i < 3; ++i) train.features(i, 1) = static_cast<double>(i);
    train.labels = {0, 1, 0};
    train.feature_names = {"const", "var"};
    const StandardizeResult r = standardize(train, train);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(r.train.features(i, 0) == 0.0);
        CHECK(r.test.features(i, 0) == 0.0);
    }
    CHECK(r.params.stds[0] == 0.0);
}

TEST_CASE("standardize properties on random data") {
    SplitMix64 rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        const Dataset ds = random_dataset(2 + rng.next_below(40), 1 + rng.next_below(6), rng);
        const StandardizeResult r = standardize(ds, ds);
        for (std::size_t j = 0; j < ds.dim(); ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < ds.n(); ++i) mean += r.train.features(i, j);
            mean /= static_cast<double>(ds.n());
            double var = 0.0;
            for (std::size_t i = 0; i < ds.n(); ++i) {
                const double diff = r.train.features(i, j) - mean;
                var += diff * diff;
            }
            var /= static_cast<double>(ds.n());
            if (r.params.stds[j] > 0) {
                CHECK(std::abs(mean) < 1e-9);
                CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-9);
            }
        }
    }
    Dataset a = random_dataset(4, 2, rng), b = random_dataset(4, 3, rng);
    CHECK_THROWS_AS(standardize(a, b), DataError);
}

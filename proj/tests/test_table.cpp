#include <doctest.h>

#include <fstream>
#include <sstream>

#include "asdml/errors.hpp"
#include "asdml/rng.hpp"
#include "asdml/table.hpp"

using namespace asdml;

namespace {

const char* kSmallArff = R"(% toy screening table
@relation toy

@attribute A1_Score {0,1}
@attribute age numeric
@attribute gender {f,m}
@attribute jaundice {no,yes}
@attribute ethnicity {Asian,Latino,White}
@attribute Class/ASD {NO,YES}

@data
1,24,m,no,Asian,NO
0,31,f,yes,?,YES
1,19.5,m,no,White,yes
)";

}  // namespace

TEST_CASE("arff declarations map to attribute kinds") {
    const RawTable t = parse_arff(kSmallArff);
    REQUIRE(t.schema.size() == 6);
    CHECK(t.schema[0].kind == AttrKind::BinaryScore);
    CHECK(t.schema[1].kind == AttrKind::Numeric);
    CHECK(t.schema[2].name == "gender");
    CHECK(t.schema[2].kind == AttrKind::Categorical);
    CHECK(t.schema[2].values == std::vector<std::string>{"f", "m"});
    CHECK(t.schema[3].kind == AttrKind::Boolean);
    CHECK(t.schema[5].kind == AttrKind::ClassLabel);
    CHECK(t.class_index() == 5);
}

TEST_CASE("missing marker keeps the row") {
    const RawTable t = parse_arff(kSmallArff);
    REQUIRE(t.n_rows() == 3);
    CHECK_FALSE(t.rows[1][4].has_value());
    CHECK(t.rows[1][0].has_value());
    // Case of the class cell is preserved as written.
    CHECK(*t.rows[2][5] == "yes");
}

TEST_CASE("row arity mismatch is reported with its line number") {
    const std::string bad = "@relation r\n@attribute a {0,1}\n@attribute b {0,1}\n@data\n1\n";
    CHECK_THROWS_WITH_AS(parse_arff(bad), doctest::Contains("line 5"), DataError);
}

TEST_CASE("invalid nominal cell is rejected") {
    const std::string bad =
        "@relation r\n@attribute g {f,m}\n@attribute Class/ASD {NO,YES}\n@data\nx,NO\n";
    CHECK_THROWS_WITH_AS(parse_arff(bad), doctest::Contains("line 5"), DataError);
}

TEST_CASE("quoted names and values survive parsing") {
    const std::string text =
        "@relation r\n"
        "@attribute 'country of res' {'United States',Spain}\n"
        "@attribute Class/ASD {NO,YES}\n"
        "@data\n"
        "'United States',NO\n"
        "Spain,YES\n";
    const RawTable t = parse_arff(text);
    CHECK(t.schema[0].name == "country of res");
    CHECK(t.schema[0].values[0] == "United States");
    CHECK(*t.rows[0][0] == "United States");
}

TEST_CASE("percent inside a quoted token is not a comment") {
    const std::string text =
        "@relation r\n"
        "@attribute share {'50%','100%'}\n"
        "@attribute Class/ASD {NO,YES}\n"
        "@data\n"
        "'50%',NO % trailing comment\n";
    const RawTable t = parse_arff(text);
    CHECK(*t.rows[0][0] == "50%");
    CHECK(parse_arff(write_arff(t)) == t);
}

TEST_CASE("arff write/parse round-trip on handwritten tables") {
    const RawTable t = parse_arff(kSmallArff);
    CHECK(parse_arff(write_arff(t)) == t);
}

TEST_CASE("arff round-trip on random tables") {
    SplitMix64 rng(7);
    const std::vector<std::string> pool = {"a", "b with space", "c,comma", "YES", "NO",
                                           "0",  "1",           "x"};
    for (int iter = 0; iter < 50; ++iter) {
        RawTable t;
        const std::size_t cols = 2 + rng.next_below(4);
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            AttributeSpec attr;
            attr.name = "col" + std::to_string(c);
            if (rng.next_below(3) == 0) {
                attr.kind = AttrKind::Numeric;
            } else {
                attr.kind = AttrKind::Categorical;
                const std::size_t count = 2 + rng.next_below(3);
                for (std::size_t v = 0; v < count; ++v) {
                    std::string value = pool[rng.next_below(pool.size())] + std::to_string(v);
                    attr.values.push_back(value);
                }
            }
            t.schema.push_back(attr);
        }
        t.schema.push_back({"class", AttrKind::ClassLabel, {"NO", "YES"}});

        const std::size_t rows = rng.next_below(6);
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<Cell> row;
            for (const auto& attr : t.schema) {
                if (rng.next_below(5) == 0) {
                    row.emplace_back(std::nullopt);
                } else if (attr.kind == AttrKind::Numeric) {
                    row.emplace_back(std::to_string(static_cast<double>(rng.next_below(100)) / 4));
                } else {
                    row.emplace_back(attr.values[rng.next_below(attr.values.size())]);
                }
            }
            t.rows.push_back(std::move(row));
        }
        CAPTURE(iter);
        CHECK(parse_arff(write_arff(t)) == t);
    }
}

TEST_CASE("csv parsing with a sidecar schema") {
    const std::string csv =
        "A1_Score,age,gender,Class/ASD\n"
        "1,24,m,NO\n"
        "0,,f,YES\n"
        "1,31,?,yes\n";
    const std::string schema =
        "# kinds\n"
        "A1_Score=binary_score\n"
        "age=numeric\n"
        "gender=categorical\n"
        "Class/ASD=class_label\n";
    const RawTable t = parse_csv(csv, schema);
    REQUIRE(t.n_rows() == 3);
    CHECK(t.schema[0].kind == AttrKind::BinaryScore);
    CHECK_FALSE(t.rows[1][1].has_value());
    CHECK_FALSE(t.rows[2][2].has_value());
    CHECK(t.schema[2].values == std::vector<std::string>{"f", "m"});

    SUBCASE("header column missing from schema") {
        CHECK_THROWS_AS(parse_csv(csv, "A1_Score=binary_score\n"), DataError);
    }
    SUBCASE("unknown kind") {
        CHECK_THROWS_AS(parse_csv(csv, "A1_Score=float\n"), DataError);
    }
    SUBCASE("quoted fields with embedded commas") {
        const std::string quoted =
            "name,Class/ASD\n"
            "\"Doe, Jane\",NO\n";
        const RawTable q = parse_csv(quoted, "name=categorical\nClass/ASD=class_label\n");
        CHECK(*q.rows[0][0] == "Doe, Jane");
    }
}

TEST_CASE("load_table infers format and reports missing files") {
    const RawTable t = load_table(std::string(ASDML_FIXTURE_DIR) + "/missing.arff");
    CHECK(t.n_rows() == 10);
    CHECK_THROWS_AS(load_table("no_such_file.arff"), DataError);
    CHECK_THROWS_AS(load_table("data.unknown"), DataError);
}

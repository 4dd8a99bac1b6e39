#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include "doctest.h"
#include "fqlga_cli/result_table.hpp"

using namespace fqlga::cli;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("result_table") {
  TEST_CASE("shortest round-trip formatting") {
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(-2.5e-300) == "-2.5e-300");
    CHECK(format_real(0.30000000000000004) == "0.30000000000000004");
  }

  TEST_CASE("rows are checked against the column declaration") {
    ResultTable t({{"t", ColumnType::integer}, {"rho", ColumnType::real}});
    CHECK_NOTHROW(t.add_row({std::int64_t{1}, 0.5}));
    CHECK_THROWS_AS(t.add_row({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(t.add_row({std::int64_t{1}}), std::invalid_argument);
    CHECK_THROWS_AS(ResultTable({{"a,b", ColumnType::real}}), std::invalid_argument);
    CHECK(t.column_values("rho") == std::vector<double>{0.5});
    CHECK_THROWS_AS(t.column_index("missing"), std::out_of_range);
  }

  TEST_CASE("CSV round trip preserves every bit") {
    ResultTable t({{"t", ColumnType::integer}, {"x", ColumnType::real}});
    t.set_provenance("experiment", "unit");
    t.set_provenance("seed", "18446744073709551615");
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    const std::vector<double> specials{0.0,
                                       -0.0,
                                       std::numeric_limits<double>::min(),
                                       std::numeric_limits<double>::denorm_min(),
                                       std::numeric_limits<double>::max(),
                                       std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::quiet_NaN()};
    for (double s : specials) t.add_row({std::int64_t{-7}, s});
    for (int i = 0; i < 500; ++i) t.add_row({std::int64_t{i}, u(gen) * std::pow(10.0, i % 40 - 20)});

    const ResultTable back = parse_csv(to_csv(t));
    REQUIRE(back.columns() == t.columns());
    REQUIRE(back.row_count() == t.row_count());
    CHECK(back.provenance() == t.provenance());
    for (std::size_t r = 0; r < t.row_count(); ++r) {
      CHECK(std::get<std::int64_t>(back.rows()[r][0]) == std::get<std::int64_t>(t.rows()[r][0]));
      CHECK(same_bits(std::get<double>(back.rows()[r][1]), std::get<double>(t.rows()[r][1])));
    }
    CHECK(to_csv(back) == to_csv(t));
  }

  TEST_CASE("layout: provenance, types, header, rows") {
    ResultTable t({{"f", ColumnType::real}, {"n", ColumnType::integer}});
    t.set_provenance("table", "demo");
    t.add_row({0.25, std::int64_t{3}});
    const std::string text = to_csv(t);
    CHECK(text == "# table: demo\n# types: real,int\nf,n\n0.25,3\n");
    CHECK(csv_body(text) == "f,n\n0.25,3\n");
    CHECK(t.provenance_value("table") == "demo");
    CHECK(t.provenance_value("absent").empty());
    CHECK_THROWS_AS(t.set_provenance("types", "x"), std::invalid_argument);
  }

  TEST_CASE("malformed CSV names the line") {
    const std::string bad = "# types: int,real\nt,x\n1,0.5\n2,abc\n";
    try {
      parse_csv(bad, "bad.csv");
      FAIL("expected CsvError");
    } catch (const CsvError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("bad.csv:4") == 0);
    }
    CHECK_THROWS_AS(parse_csv("# types: int\nt\n1.5\n"), CsvError);
    CHECK_THROWS_AS(parse_csv("t,x\n1\n"), CsvError);
    CHECK_THROWS_AS(parse_csv("# only comments\n"), CsvError);
    CHECK_THROWS_AS(parse_csv("# types: int,blob\na,b\n"), CsvError);
  }

  TEST_CASE("files") {
    const auto path = std::filesystem::temp_directory_path() / "fqlga_table_test.csv";
    ResultTable t({{"x", ColumnType::real}});
    t.add_row({1.5});
    write_csv(t, path);
    CHECK(read_csv(path).column_values("x") == std::vector<double>{1.5});
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_csv(path), IoError);
    CHECK_THROWS_AS(write_csv(t, path / "nested" / "x.csv"), IoError);
  }
}

#include "svlab/csv.hpp"
#include "svlab/error.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace svlab;

TEST_CASE("format/parse round-trip doubles exactly") {
    for (double v : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 6.02214076e23, 4.9e-324, -123.456789012345678,
                     std::numeric_limits<double>::max()}) {
        CHECK(csv::parse_double(csv::format(v)) == v);
    }
}

TEST_CASE("parse_double rejects partial and empty fields") {
    CHECK_THROWS_AS(csv::parse_double(""), Error);
    CHECK_THROWS_AS(csv::parse_double("1.5x"), Error);
    CHECK_THROWS_AS(csv::parse_double("abc"), Error);
}

TEST_CASE("split_line handles quotes and whitespace") {
    const auto f = csv::split_line(" a , \"b,c\" ,d");
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "a");
    CHECK(f[1] == "b,c");
    CHECK(f[2] == "d");
}

TEST_CASE("read: header, rows, line numbers, blank lines and CRLF") {
    std::istringstream in("x,y\r\n1,2\r\n\r\n3,4\r\n");
    const auto t = csv::read(in);
    CHECK(t.header == std::vector<std::string>{"x", "y"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.line_numbers == std::vector<std::size_t>{2, 4});
    CHECK(t.numeric_column("y") == std::vector<double>{2.0, 4.0});
    CHECK_THROWS_AS(t.column("z"), Error);
}

TEST_CASE("read: ragged rows are errors") {
    std::istringstream in("x,y\n1,2\n3\n");
    CHECK_THROWS_AS(csv::read(in), Error);
}

TEST_CASE("writer checks row width and round-trips through read") {
    std::ostringstream out;
    csv::Writer w(out, {"a", "b"});
    w.row(std::vector<double>{0.1, 2.5e-300});
    w.row(std::vector<std::string>{"1", ""});
    CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), Error);
    std::istringstream in(out.str());
    const auto t = csv::read(in);
    CHECK(csv::parse_double(t.rows[0][1]) == 2.5e-300);
    CHECK(t.rows[1][1].empty());
}

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace svlab::csv {

// Shortest decimal text that parses back to the identical double.
std::string format(double value);

// Parses a full field as a double; throws Error(ParseError).
double parse_double(std::string_view field);

std::vector<std::string> split_line(std::string_view line, char sep = ',');

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers; // 1-based source line of each row

    // Index of a header column; throws Error(ParseError) if absent.
    std::size_t column(std::string_view name) const;
    std::vector<double> numeric_column(std::string_view name) const;
};

// Reads a header + rows file. Blank lines are skipped; '\r' is stripped.
// Rows with a different field count than the header raise ParseError.
Table read(std::istream& in);
Table read_file(const std::filesystem::path& path);

// Writes rows of doubles under a header; empty optional cells are written
// with `write_row` by passing pre-formatted strings.
class Writer {
public:
    Writer(std::ostream& out, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
    std::size_t width_;
};

} // namespace svlab::csv

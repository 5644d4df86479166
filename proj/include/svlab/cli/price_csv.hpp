#pragma once

#include "svlab/calibrate.hpp"

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace svlab::cli {

// Parses an ISO-8601 calendar date (YYYY-MM-DD); throws Error(ParseError).
std::chrono::sys_days parse_date(const std::string& text);
std::string format_date(std::chrono::sys_days day);

// Reads a price file with a header containing Date and Close. Other columns
// are ignored. Rows are sorted ascending by date; duplicate dates, malformed
// fields and non-positive closes raise Error(ParseError) naming the line.
PriceSeries read_price_csv(std::istream& in, std::string symbol = {});
PriceSeries read_price_csv(const std::filesystem::path& path);

void write_price_csv(std::ostream& out, const PriceSeries& prices);

} // namespace svlab::cli

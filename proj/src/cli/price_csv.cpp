#include "svlab/cli/price_csv.hpp"

#include "svlab/csv.hpp"
#include "svlab/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

namespace svlab::cli {

namespace {

int parse_int(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, "malformed date field '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

std::chrono::sys_days parse_date(const std::string& text) {
    // Accept a trailing time part such as "2004-01-02T00:00:00" or "2004-01-02 00:00".
    const std::string date = text.substr(0, std::min(text.size(), text.find_first_of("T ")));
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') {
        throw Error(ErrorCode::ParseError, "expected YYYY-MM-DD, got '" + text + "'");
    }
    const std::string_view view(date);
    const std::chrono::year_month_day ymd{std::chrono::year{parse_int(view.substr(0, 4))},
                                          std::chrono::month{static_cast<unsigned>(parse_int(view.substr(5, 2)))},
                                          std::chrono::day{static_cast<unsigned>(parse_int(view.substr(8, 2)))}};
    if (!ymd.ok()) throw Error(ErrorCode::ParseError, "invalid calendar date '" + text + "'");
    return std::chrono::sys_days{ymd};
}

std::string format_date(std::chrono::sys_days day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

PriceSeries read_price_csv(std::istream& in, std::string symbol) {
    const csv::Table table = csv::read(in);
    const std::size_t date_col = table.column("Date");
    const std::size_t close_col = table.column("Close");

    struct Row {
        std::chrono::sys_days date;
        double close;
        std::size_t line;
    };
    std::vector<Row> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto line = table.line_numbers[i];
        const auto where = "row at line " + std::to_string(line) + ": ";
        try {
            const auto date = parse_date(table.rows[i][date_col]);
            const double close = csv::parse_double(table.rows[i][close_col]);
            if (!std::isfinite(close) || close <= 0.0) {
                throw Error(ErrorCode::ParseError, "non-positive close " + table.rows[i][close_col]);
            }
            rows.push_back({date, close, line});
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, where + e.detail());
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw Error(ErrorCode::ParseError, "row at line " + std::to_string(std::max(rows[i].line, rows[i - 1].line)) +
                                                   ": duplicate date " + format_date(rows[i].date));
        }
    }
    PriceSeries prices;
    prices.symbol = std::move(symbol);
    for (const auto& r : rows) {
        prices.dates.push_back(r.date);
        prices.closes.push_back(r.close);
    }
    return prices;
}

PriceSeries read_price_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open price file " + path.string());
    try {
        return read_price_csv(in, path.stem().string());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ", " + e.detail());
    }
}

void write_price_csv(std::ostream& out, const PriceSeries& prices) {
    csv::Writer writer(out, {"Date", "Close"});
    for (std::size_t i = 0; i < prices.closes.size(); ++i) {
        writer.row(std::vector<std::string>{format_date(prices.dates[i]), csv::format(prices.closes[i])});
    }
}

} // namespace svlab::cli

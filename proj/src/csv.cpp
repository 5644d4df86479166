#include "svlab/csv.hpp"

#include "svlab/error.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace svlab::csv {

std::string format(double value) {
    std::array<char, 64> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

double parse_double(std::string_view field) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
        throw Error(ErrorCode::ParseError, "not a number: '" + std::string(field) + "'");
    }
    return value;
}

std::vector<std::string> split_line(std::string_view line, char sep) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == sep && !quoted) {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    for (auto& f : fields) {
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
        std::size_t lead = 0;
        while (lead < f.size() && (f[lead] == ' ' || f[lead] == '\t')) ++lead;
        f.erase(0, lead);
    }
    return fields;
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error(ErrorCode::ParseError, "missing column '" + std::string(name) + "'");
}

std::vector<double> Table::numeric_column(std::string_view name) const {
    const std::size_t c = column(name);
    std::vector<double> values;
    values.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        try {
            values.push_back(parse_double(rows[r][c]));
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_numbers[r]) + ", column '" + std::string(name) +
                            "': " + e.detail());
        }
    }
    return values;
}

Table read(std::istream& in) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto fields = split_line(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                                   std::to_string(table.header.size()) + " fields, found " +
                                                   std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header) throw Error(ErrorCode::ParseError, "empty file: header row required");
    return table;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read(in);
}

Writer::Writer(std::ostream& out, const std::vector<std::string>& header) : out_(out), width_(header.size()) {
    row(header);
}

void Writer::row(const std::vector<double>& values) {
    if (values.size() != width_) throw Error(ErrorCode::IoError, "csv row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format(values[i]);
    }
    out_ << '\n';
}

void Writer::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw Error(ErrorCode::IoError, "csv row width does not match header");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
}

} // namespace svlab::csv

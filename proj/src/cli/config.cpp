#include "svlab/cli/config.hpp"

#include "svlab/csv.hpp"
#include "svlab/error.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace svlab::cli {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& v) { return csv::parse_double(v); }

std::uint64_t to_u64(const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
        throw Error(ErrorCode::ParseError, "expected a non-negative integer, got '" + v + "'");
    }
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "integer out of range: '" + v + "'");
    }
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw Error(ErrorCode::ParseError, "expected true/false, got '" + v + "'");
}

struct KeySpec {
    std::string description;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

std::string fmt(double v) { return csv::format(v); }

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += fmt(values[i]);
    }
    return out;
}

// Ordered table of section.key -> spec; the order drives write_config and
// config_reference.
const std::vector<std::pair<std::string, KeySpec>>& key_table() {
    static const std::vector<std::pair<std::string, KeySpec>> table = {
        {"model.kind", {"vasicek | heston | expou",
                        [](RunConfig& c, const std::string& v) { c.model.kind = parse_model_kind(v); },
                        [](const RunConfig& c) { return std::string(to_string(c.model.kind)); }}},
        {"model.alpha", {"mean-reversion rate (1/time unit)",
                         [](RunConfig& c, const std::string& v) { c.model.alpha = to_double(v); },
                         [](const RunConfig& c) { return fmt(c.model.alpha); }}},
        {"model.m", {"reversion level of Y (ignored for expou)",
                     [](RunConfig& c, const std::string& v) { c.model.m = to_double(v); },
                     [](const RunConfig& c) { return fmt(c.model.m); }}},
        {"model.k", {"vol-of-vol (1/sqrt(time unit))",
                     [](RunConfig& c, const std::string& v) { c.model.k = to_double(v); },
                     [](const RunConfig& c) { return fmt(c.model.k); }}},
        {"model.rho", {"correlation of the Wiener drivers, in [-1, 1]",
                       [](RunConfig& c, const std::string& v) { c.model.rho = to_double(v); },
                       [](const RunConfig& c) { return fmt(c.model.rho); }}},
        {"model.mu", {"price drift (1/time unit)",
                      [](RunConfig& c, const std::string& v) { c.model.mu = to_double(v); },
                      [](const RunConfig& c) { return fmt(c.model.mu); }}},
        {"model.y0", {"initial driving value Y(0)",
                      [](RunConfig& c, const std::string& v) { c.model.y0 = to_double(v); },
                      [](const RunConfig& c) { return fmt(c.model.y0); }}},
        {"model.s0", {"initial price S(0)",
                      [](RunConfig& c, const std::string& v) { c.model.s0 = to_double(v); },
                      [](const RunConfig& c) { return fmt(c.model.s0); }}},
        {"paths.dt", {"Euler step in time units",
                      [](RunConfig& c, const std::string& v) { c.paths.dt = to_double(v); },
                      [](const RunConfig& c) { return fmt(c.paths.dt); }}},
        {"paths.n_steps", {"steps per path",
                           [](RunConfig& c, const std::string& v) { c.paths.n_steps = to_u64(v); },
                           [](const RunConfig& c) { return std::to_string(c.paths.n_steps); }}},
        {"paths.n_paths", {"paths in the ensemble",
                           [](RunConfig& c, const std::string& v) { c.paths.n_paths = to_u64(v); },
                           [](const RunConfig& c) { return std::to_string(c.paths.n_paths); }}},
        {"paths.record_stride", {"store every n-th step",
                                 [](RunConfig& c, const std::string& v) { c.paths.record_stride = to_u64(v); },
                                 [](const RunConfig& c) { return std::to_string(c.paths.record_stride); }}},
        {"paths.time_unit", {"label of the time axis (day, year, ...)",
                             [](RunConfig& c, const std::string& v) { c.paths.time_unit = v; },
                             [](const RunConfig& c) { return c.paths.time_unit; }}},
        {"estimators.years", {"length of the single long series for correlations (252-day years)",
                              [](RunConfig& c, const std::string& v) { c.estimators.years = to_u64(v); },
                              [](const RunConfig& c) { return std::to_string(c.estimators.years); }}},
        {"estimators.max_lag", {"largest correlation lag, in recorded days",
                                [](RunConfig& c, const std::string& v) { c.estimators.max_lag = to_u64(v); },
                                [](const RunConfig& c) { return std::to_string(c.estimators.max_lag); }}},
        {"estimators.resamples", {"block-bootstrap resamples",
                                  [](RunConfig& c, const std::string& v) { c.estimators.resamples = to_u64(v); },
                                  [](const RunConfig& c) { return std::to_string(c.estimators.resamples); }}},
        {"estimators.block_length", {"bootstrap block length in days (0: 10 / alpha)",
                                     [](RunConfig& c, const std::string& v) { c.estimators.block_length = to_u64(v); },
                                     [](const RunConfig& c) { return std::to_string(c.estimators.block_length); }}},
        {"estimators.density_method", {"histogram | cf",
                                       [](RunConfig& c, const std::string& v) {
                                           if (v == "histogram") c.estimators.density_method = DensityMethod::Histogram;
                                           else if (v == "cf") c.estimators.density_method = DensityMethod::CharacteristicFunction;
                                           else throw Error(ErrorCode::ParseError, "expected histogram or cf, got '" + v + "'");
                                       },
                                       [](const RunConfig& c) {
                                           return std::string(c.estimators.density_method == DensityMethod::Histogram ? "histogram" : "cf");
                                       }}},
        {"estimators.binwidth", {"histogram bin width (0: Freedman-Diaconis)",
                                 [](RunConfig& c, const std::string& v) { c.estimators.binwidth = to_double(v); },
                                 [](const RunConfig& c) { return fmt(c.estimators.binwidth); }}},
        {"pdf.horizons", {"comma-separated return horizons in time units",
                          [](RunConfig& c, const std::string& v) { c.pdf.horizons = parse_number_list(v); },
                          [](const RunConfig& c) { return join(c.pdf.horizons); }}},
        {"pdf.n_paths", {"Monte Carlo paths per horizon",
                         [](RunConfig& c, const std::string& v) { c.pdf.n_paths = to_u64(v); },
                         [](const RunConfig& c) { return std::to_string(c.pdf.n_paths); }}},
        {"output.dir", {"output directory",
                        [](RunConfig& c, const std::string& v) { c.out_dir = v; },
                        [](const RunConfig& c) { return c.out_dir.string(); }}},
        {"output.format", {"csv | binary (simulate only)",
                           [](RunConfig& c, const std::string& v) {
                               if (v == "csv") c.format = OutputFormat::Csv;
                               else if (v == "binary") c.format = OutputFormat::Binary;
                               else throw Error(ErrorCode::ParseError, "expected csv or binary, got '" + v + "'");
                           },
                           [](const RunConfig& c) { return std::string(c.format == OutputFormat::Csv ? "csv" : "binary"); }}},
        {"output.prices", {"simulate also writes prices.csv (Date,Close) for path 0",
                           [](RunConfig& c, const std::string& v) { c.write_prices = to_bool(v); },
                           [](const RunConfig& c) { return std::string(c.write_prices ? "true" : "false"); }}},
        {"run.seed", {"master seed (unsigned 64-bit)",
                      [](RunConfig& c, const std::string& v) { c.seed = to_u64(v); },
                      [](const RunConfig& c) { return std::to_string(c.seed); }}},
    };
    return table;
}

const KeySpec* find_key(const std::string& full) {
    for (const auto& [name, spec] : key_table()) {
        if (name == full) return &spec;
    }
    return nullptr;
}

} // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& field : csv::split_line(text)) {
        if (field.empty()) continue;
        out.push_back(csv::parse_double(field));
    }
    return out;
}

RunConfig parse_config(std::istream& in) {
    RunConfig config;
    std::string line;
    std::string section;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto where = "line " + std::to_string(line_no) + ": ";
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw Error(ErrorCode::ParseError, where + "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& [name, spec] : key_table()) known = known || name.rfind(section + ".", 0) == 0;
            if (!known) throw Error(ErrorCode::ParseError, where + "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, where + "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (section.empty()) throw Error(ErrorCode::ParseError, where + "key '" + key + "' outside a section");
        const auto full = section + "." + key;
        const KeySpec* spec = find_key(full);
        if (!spec) throw Error(ErrorCode::ParseError, where + "unknown key '" + full + "'");
        if (!seen.insert(full).second) throw Error(ErrorCode::ParseError, where + "duplicate key '" + full + "'");
        try {
            spec->set(config, value);
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, where + "key '" + full + "': " + e.detail());
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
    try {
        return parse_config(in);
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, path.string() + ", " + e.detail());
    }
}

std::string write_config(const RunConfig& config) {
    std::ostringstream os;
    std::string section;
    for (const auto& [name, spec] : key_table()) {
        const auto dot = name.find('.');
        const auto sec = name.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) os << '\n';
            os << '[' << sec << "]\n";
            section = sec;
        }
        os << name.substr(dot + 1) << " = " << spec.get(config) << '\n';
    }
    return os.str();
}

std::string config_reference() {
    const RunConfig defaults;
    std::ostringstream os;
    os << "# svlab run configuration keys (section.key = default  # meaning)\n";
    for (const auto& [name, spec] : key_table()) {
        os << name << " = " << spec.get(defaults) << "  # " << spec.description << '\n';
    }
    return os.str();
}

} // namespace svlab::cli

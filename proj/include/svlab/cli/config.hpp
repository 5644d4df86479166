#pragma once

#include "svlab/estimators.hpp"
#include "svlab/model.hpp"
#include "svlab/simulate.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace svlab::cli {

enum class OutputFormat { Csv, Binary };

struct EstimatorConfig {
    std::size_t years = 100;
    std::size_t max_lag = 40;
    std::size_t resamples = 200;
    std::size_t block_length = 0; // 0: 10 relaxation times
    DensityMethod density_method = DensityMethod::Histogram;
    double binwidth = 0.0;
};

struct PdfConfig {
    std::vector<double> horizons;
    std::size_t n_paths = 20000;
};

struct RunConfig {
    ModelParams model;
    PathConfig paths;
    EstimatorConfig estimators;
    PdfConfig pdf;
    std::filesystem::path out_dir = "out";
    OutputFormat format = OutputFormat::Csv;
    bool write_prices = false;
    std::uint64_t seed = 1;
};

// Flat key-value text with [sections]; '#' and ';' start comments. Unknown
// sections or keys, malformed values and duplicate keys raise
// Error(ParseError) naming the line and key.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

// Canonical text form; parse_config(write_config(c)) reproduces c.
std::string write_config(const RunConfig& config);

// Reference of every accepted key with its default and meaning.
std::string config_reference();

std::vector<double> parse_number_list(const std::string& text);

} // namespace svlab::cli

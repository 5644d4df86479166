#pragma once

#include "svlab/cli/config.hpp"
#include "svlab/error.hpp"
#include "svlab/estimators.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace svlab::cli {

struct CommandContext {
    unsigned workers = 0;        // 0: default_worker_count()
    std::ostream* log = nullptr; // warnings and notes, one per line
};

struct CommandResult {
    std::vector<std::filesystem::path> outputs; // relative to the output directory
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
};

// Path ensemble to paths.csv or paths.bin, optionally prices.csv of path 0.
CommandResult cmd_simulate(const RunConfig& config, const CommandContext& ctx = {});

// One density file per horizon plus pdf_summary.csv. An empty horizon list
// throws Error(InvalidParams).
CommandResult cmd_pdf(const RunConfig& config, const std::vector<double>& horizons,
                      const CommandContext& ctx = {});

// leverage.csv and autocorr.csv from the single long series.
CommandResult cmd_correlations(const RunConfig& config, const CommandContext& ctx = {});

enum class FitTarget { Volatility, Returns, Horizons };
FitTarget parse_fit_target(const std::string& name);

struct FitRequest {
    std::filesystem::path prices;
    FitTarget what = FitTarget::Volatility;
    std::vector<std::size_t> horizons = {1, 5, 20};
    std::filesystem::path out_dir = "out";
    DensityOptions density{};
};

CommandResult cmd_fit(const FitRequest& request, const CommandContext& ctx = {});

// 2 for configuration, input and usage errors; 3 for numerical failures.
int exit_code_for(ErrorCode code);

} // namespace svlab::cli

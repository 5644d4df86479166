#include "svlab/cli/commands.hpp"
#include "svlab/cli/config.hpp"
#include "svlab/csv.hpp"
#include "svlab/error.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>

namespace {

using namespace svlab;
using namespace svlab::cli;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format;
};

RunConfig resolve(const Overrides& o) {
    RunConfig config = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.seed) config.seed = *o.seed;
    if (!o.out_dir.empty()) config.out_dir = o.out_dir;
    if (o.format == "csv") config.format = OutputFormat::Csv;
    if (o.format == "binary") config.format = OutputFormat::Binary;
    return config;
}

void add_common(CLI::App* cmd, Overrides& o, bool with_format) {
    cmd->add_option("--config", o.config_path, "run configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "master seed (overrides run.seed)");
    cmd->add_option("--out", o.out_dir, "output directory (overrides output.dir)");
    if (with_format) {
        cmd->add_option("--format", o.format, "path file format (overrides output.format)")
            ->check(CLI::IsMember({"csv", "binary"}));
    }
}

void print_outputs(const std::filesystem::path& dir, const CommandResult& result) {
    for (const auto& f : result.outputs) std::cout << (dir / f).string() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"svlab: stochastic volatility simulation, estimation and calibration"};
    app.set_version_flag("--version", SVLAB_VERSION);
    app.require_subcommand(0, 1);
    bool show_reference = false;
    app.add_flag("--config-reference", show_reference, "print every configuration key with its default");

    Overrides sim_o, pdf_o, cor_o;
    auto* sim = app.add_subcommand("simulate", "simulate a path ensemble");
    add_common(sim, sim_o, true);

    auto* pdf = app.add_subcommand("pdf", "Monte Carlo return densities per horizon");
    add_common(pdf, pdf_o, false);
    std::string pdf_horizons;
    pdf->add_option("--horizons", pdf_horizons, "comma-separated horizons (overrides pdf.horizons)");

    auto* cor = app.add_subcommand("correlations", "leverage and volatility autocorrelation curves");
    add_common(cor, cor_o, false);
    std::optional<std::size_t> years;
    cor->add_option("--years", years, "series length in years (overrides estimators.years)");

    auto* fit = app.add_subcommand("fit", "fit densities to a Date,Close price file");
    std::string prices, what = "vol", fit_out = "out", fit_horizons = "1,5,20";
    fit->add_option("prices", prices, "price CSV with Date and Close columns")->required();
    fit->add_option("--what", what, "vol | ret | horizons")->check(CLI::IsMember({"vol", "ret", "horizons"}));
    fit->add_option("--out", fit_out, "output directory");
    fit->add_option("--horizons", fit_horizons, "comma-separated day counts for --what horizons");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (show_reference) {
        std::cout << config_reference();
        return 0;
    }
    if (!app.get_subcommands().size()) {
        std::cerr << app.help();
        return 2;
    }

    CommandContext ctx;
    ctx.log = &std::cerr;
    try {
        if (*sim) {
            const auto config = resolve(sim_o);
            print_outputs(config.out_dir, cmd_simulate(config, ctx));
        } else if (*pdf) {
            const auto config = resolve(pdf_o);
            const auto horizons = pdf->count("--horizons") ? parse_number_list(pdf_horizons) : config.pdf.horizons;
            print_outputs(config.out_dir, cmd_pdf(config, horizons, ctx));
        } else if (*cor) {
            auto config = resolve(cor_o);
            if (years) config.estimators.years = *years;
            print_outputs(config.out_dir, cmd_correlations(config, ctx));
        } else if (*fit) {
            FitRequest request;
            request.prices = prices;
            request.what = parse_fit_target(what);
            request.out_dir = fit_out;
            request.horizons.clear();
            for (double h : parse_number_list(fit_horizons)) {
                if (!(h >= 1.0) || h != std::floor(h)) {
                    throw Error(ErrorCode::InvalidParams, "fit horizons must be whole days >= 1");
                }
                request.horizons.push_back(static_cast<std::size_t>(h));
            }
            print_outputs(request.out_dir, cmd_fit(request, ctx));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

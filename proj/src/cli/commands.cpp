#include "svlab/cli/commands.hpp"

#include "svlab/analytic.hpp"
#include "svlab/calibrate.hpp"
#include "svlab/cli/manifest.hpp"
#include "svlab/cli/price_csv.hpp"
#include "svlab/csv.hpp"
#include "svlab/parallel.hpp"
#include "svlab/path_io.hpp"
#include "svlab/stats.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace svlab::cli {

namespace {

namespace fs = std::filesystem;

unsigned workers_of(const CommandContext& ctx) { return ctx.workers ? ctx.workers : default_worker_count(); }

void report(const CommandContext& ctx, const std::string& prefix, const std::vector<std::string>& lines) {
    if (!ctx.log) return;
    for (const auto& line : lines) *ctx.log << prefix << line << '\n';
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    return out;
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

// Label of a horizon used in file names: "20" for 20.0, "0.5" for 0.5.
std::string horizon_label(double h) { return csv::format(h); }

Manifest config_manifest(const std::string& command, const RunConfig& config) {
    Manifest m;
    m.command = command;
    m.seed = config.seed;
    // The output location does not affect any output byte.
    RunConfig canonical = config;
    canonical.out_dir = ".";
    m.config_text = write_config(canonical);
    m.input_name = "config";
    m.input_digest = sha256_hex(m.config_text);
    m.details["model"] = to_json(normalized(config.model));
    return m;
}

// Warnings known before any work starts are printed immediately; `reported`
// counts them so finish() prints only the rest.
void finish(const fs::path& dir, Manifest manifest, CommandResult& result, const CommandContext& ctx,
            std::size_t reported = 0) {
    manifest.warnings = result.warnings;
    manifest.notes = result.notes;
    report(ctx, "warning: ",
           std::vector<std::string>(result.warnings.begin() + static_cast<std::ptrdiff_t>(reported), result.warnings.end()));
    report(ctx, "note: ", result.notes);
    write_manifest(dir, manifest, result.outputs);
    result.outputs.push_back("manifest.json");
}

nlohmann::json family_json(const DensityFamily& family) {
    return std::visit(
        [](const auto& f) -> nlohmann::json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, NormalDensity>) return {{"mean", f.mean}, {"std", f.std}};
            if constexpr (std::is_same_v<T, GammaDensity>) return {{"shape", f.shape}, {"scale", f.scale}};
            if constexpr (std::is_same_v<T, LogNormalDensity>) return {{"log_mean", f.log_mean}, {"log_std", f.log_std}};
            if constexpr (std::is_same_v<T, StudentTDensity>)
                return {{"location", f.location}, {"scale", f.scale}, {"dof", f.dof}};
        },
        family);
}

nlohmann::json report_json(const FitReport& report) {
    nlohmann::json ranked = nlohmann::json::array();
    for (std::size_t i = 0; i < report.ranked.size(); ++i) {
        const auto& r = report.ranked[i];
        ranked.push_back({{"rank", i + 1},
                          {"family", std::string(to_string(kind_of(r.family)))},
                          {"params", family_json(r.family)},
                          {"loglik", r.loglik},
                          {"aic", r.aic},
                          {"n_samples", r.n_samples},
                          {"converged", r.converged},
                          {"n_evals", r.n_evals},
                          {"warnings", r.warnings}});
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : report.failures) {
        failures.push_back({{"family", std::string(to_string(f.family))}, {"message", f.message}});
    }
    return {{"ranked", ranked}, {"failures", failures}};
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

// Empirical density with one pdf column per fitted family.
void write_fit_density(const fs::path& path, const EmpiricalDensity& density, const FitReport& report) {
    std::vector<std::string> header = {"x", "density"};
    for (const auto& r : report.ranked) header.push_back(std::string(to_string(kind_of(r.family))) + "_pdf");
    auto out = open_output(path);
    csv::Writer writer(out, header);
    for (std::size_t i = 0; i < density.grid.size(); ++i) {
        std::vector<double> row = {density.grid[i], density.density[i]};
        for (const auto& r : report.ranked) {
            const double x = density.grid[i];
            row.push_back(x < support_min(r.family) ? 0.0 : pdf(r.family, x));
        }
        writer.row(row);
    }
}

double coverage(const std::vector<double>& values, const std::vector<double>& se, const std::vector<double>& target,
                std::size_t count) {
    std::size_t hits = 0;
    count = std::min(count, values.size());
    for (std::size_t i = 0; i < count; ++i) hits += std::abs(values[i] - target[i]) <= 3.0 * se[i];
    return count ? static_cast<double>(hits) / static_cast<double>(count) : 0.0;
}

} // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFiniteState:
        case ErrorCode::GridTooCoarse:
        case ErrorCode::DomainError:
            return 3;
        default:
            return 2;
    }
}

FitTarget parse_fit_target(const std::string& name) {
    if (name == "vol") return FitTarget::Volatility;
    if (name == "ret") return FitTarget::Returns;
    if (name == "horizons") return FitTarget::Horizons;
    throw Error(ErrorCode::InvalidParams, "fit target must be vol, ret or horizons, got '" + name + "'");
}

CommandResult cmd_simulate(const RunConfig& config, const CommandContext& ctx) {
    CommandResult result;
    result.warnings = validate(config.model);
    PathConfig paths = config.paths;
    paths.seed = config.seed;
    for (auto& w : validate(paths, config.model)) result.warnings.push_back(std::move(w));
    report(ctx, "warning: ", result.warnings);

    const auto set = simulate_paths(normalized(config.model), paths, SimulationOptions{workers_of(ctx), false});
    prepare_dir(config.out_dir);
    if (config.format == OutputFormat::Csv) {
        auto out = open_output(config.out_dir / "paths.csv");
        write_paths_csv(out, set);
        result.outputs.push_back("paths.csv");
    } else {
        auto out = open_output(config.out_dir / "paths.bin");
        write_paths_binary(out, set);
        result.outputs.push_back("paths.bin");
    }
    if (config.write_prices) {
        const auto start = std::chrono::sys_days{std::chrono::year{2000} / std::chrono::January / 3};
        auto out = open_output(config.out_dir / "prices.csv");
        write_price_csv(out, prices_from_path(set, 0, start));
        result.outputs.push_back("prices.csv");
    }
    auto manifest = config_manifest("simulate", config);
    manifest.details["n_recorded"] = set.config.n_recorded();
    finish(config.out_dir, manifest, result, ctx, result.warnings.size());
    return result;
}

CommandResult cmd_pdf(const RunConfig& config, const std::vector<double>& horizons, const CommandContext& ctx) {
    if (horizons.empty()) throw Error(ErrorCode::InvalidParams, "empty horizon list");
    for (double h : horizons) {
        if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidParams, "horizons must be > 0");
    }
    CommandResult result;
    result.warnings = validate(config.model);
    report(ctx, "warning: ", result.warnings);
    const std::size_t reported = result.warnings.size();
    prepare_dir(config.out_dir);

    const auto params = normalized(config.model);
    DensityOptions density_options;
    density_options.method = config.estimators.density_method;
    density_options.binwidth = config.estimators.binwidth;

    std::ostringstream summary;
    csv::Writer summary_writer(summary, {"horizon", "n_samples", "binwidth", "normalization", "clipped_mass",
                                         "mean", "variance", "skewness", "excess_kurtosis"});
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        const double h = horizons[i];
        ReturnPdfOptions options;
        // Every horizon reuses the same path streams, so shorter horizons are
        // prefixes of longer ones whenever the step sizes agree.
        options.seed = config.seed;
        options.workers = workers_of(ctx);
        options.density = density_options;
        const auto samples = terminal_returns(params, h, config.pdf.n_paths, options);
        const auto density = density_from_samples(samples, density_options);
        const auto moments = sample_moments(samples);
        const std::string label = horizon_label(h);
        for (const auto& w : density.warnings) result.warnings.push_back("horizon " + label + ": " + w);
        if (config.pdf.n_paths < 10000) {
            result.warnings.push_back("horizon " + label + ": low statistics: " + std::to_string(config.pdf.n_paths) +
                                   " paths (< 1e4)");
        }
        double sum = 0.0;
        for (double d : density.density) sum += d;
        const double dx = density.grid.size() > 1 ? density.grid[1] - density.grid[0] : 0.0;
        const double normalization = sum * dx;

        const NormalDensity gaussian{moments.mean, std::sqrt(moments.variance)};
        const std::string name = "pdf_h" + label + ".csv";
        auto out = open_output(config.out_dir / name);
        csv::Writer writer(out, {"x", "density", "gaussian_reference", "normalization"});
        for (std::size_t j = 0; j < density.grid.size(); ++j) {
            writer.row(std::vector<double>{density.grid[j], density.density[j], pdf(gaussian, density.grid[j]),
                                           normalization});
        }
        result.outputs.push_back(name);
        summary_writer.row(std::vector<double>{h, static_cast<double>(samples.size()), density.bandwidth_or_binwidth,
                                               normalization, density.clipped_mass, moments.mean, moments.variance,
                                               moments.skewness, moments.excess_kurtosis});
    }
    {
        auto out = open_output(config.out_dir / "pdf_summary.csv");
        out << summary.str();
        result.outputs.push_back("pdf_summary.csv");
    }
    auto manifest = config_manifest("pdf", config);
    manifest.details["horizons"] = horizons;
    finish(config.out_dir, manifest, result, ctx, reported);
    return result;
}

CommandResult cmd_correlations(const RunConfig& config, const CommandContext& ctx) {
    CommandResult result;
    result.warnings = validate(config.model);
    const auto params = normalized(config.model);
    const auto& est = config.estimators;
    const double dt = config.paths.dt;
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidParams, "paths.dt must be > 0");
    const auto stride = static_cast<std::size_t>(std::llround(1.0 / dt));
    if (stride == 0 || std::abs(static_cast<double>(stride) * dt - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidParams, "paths.dt must divide one day exactly");
    }
    if (est.years < 100) {
        result.warnings.push_back("low statistics: " + std::to_string(est.years) + " years (< 100)");
    }
    if (params.alpha * dt > 0.1) {
        result.warnings.push_back("alpha*dt = " + csv::format(params.alpha * dt) + " exceeds 0.1");
    }
    report(ctx, "warning: ", result.warnings);
    const std::size_t reported = result.warnings.size();
    const auto series_paths = single_long_series(params, est.years, dt, config.seed, stride);
    const ReturnSeries series{increments(series_paths, 0), 1.0, SeriesOrigin::Simulated};

    BootstrapOptions boot;
    boot.block_length = est.block_length ? est.block_length : block_length_for(params, 1.0);
    boot.resamples = est.resamples;
    boot.seed = config.seed;
    boot.workers = workers_of(ctx);

    prepare_dir(config.out_dir);
    nlohmann::json details;
    // Two decay constants of the driving process, in lags.
    const auto two_decays = static_cast<std::size_t>(std::floor(2.0 / params.alpha));

    {
        const auto curve = estimate_leverage(series, est.max_lag, boot);
        for (const auto& w : curve.warnings) result.warnings.push_back("leverage: " + w);
        const bool has_target = params.kind != ModelKind::Heston;
        const double scale = has_target ? leverage_scale(params) : 1.0;
        std::vector<double> values, se, target;
        for (std::size_t i = 0; i < curve.lags.size(); ++i) {
            values.push_back(curve.values[i] / scale);
            se.push_back(curve.std_error[i] / scale);
            if (has_target) target.push_back(leverage_analytic(params, curve.lags[i]));
        }
        auto out = open_output(config.out_dir / "leverage.csv");
        csv::Writer writer(out, {"lag", "value", "stderr", "analytic"});
        for (std::size_t i = 0; i < values.size(); ++i) {
            writer.row(std::vector<std::string>{csv::format(curve.lags[i]), csv::format(values[i]), csv::format(se[i]),
                                                has_target ? csv::format(target[i]) : std::string()});
        }
        result.outputs.push_back("leverage.csv");
        if (has_target) {
            details["leverage_scale"] = scale;
            // Two decay constants of the leverage curve, in lags.
            const double decay = params.kind == ModelKind::ExpOU ? params.k * params.k : params.alpha;
            const auto lags = static_cast<std::size_t>(std::floor(2.0 / decay));
            details["leverage_coverage"] = coverage(values, se, target, std::max<std::size_t>(lags, 1));
        } else {
            result.notes.push_back("leverage: no analytic target (Table 2: ?)");
        }
    }
    {
        const auto curve = estimate_autocorr(series, est.max_lag, boot);
        for (const auto& w : curve.warnings) result.warnings.push_back("autocorr: " + w);
        std::vector<double> target;
        for (double lag : curve.lags) target.push_back(autocorr_analytic(params, lag));
        if (params.kind != ModelKind::ExpOU && !target.empty()) {
            // Single-exponential shape, scaled to the estimate at the first lag.
            const double factor = curve.values.front() / target.front();
            for (auto& t : target) t *= factor;
            result.notes.push_back("autocorr: analytic column is exp(-alpha tau) scaled to the lag-1 estimate");
        }
        auto out = open_output(config.out_dir / "autocorr.csv");
        csv::Writer writer(out, {"lag", "value", "stderr", "analytic"});
        for (std::size_t i = 0; i < curve.lags.size(); ++i) {
            writer.row(std::vector<double>{curve.lags[i], curve.values[i], curve.std_error[i], target[i]});
        }
        result.outputs.push_back("autocorr.csv");
        details["autocorr_coverage"] =
            coverage(curve.values, curve.std_error, target, std::max<std::size_t>(two_decays, 1));
    }
    details["series_days"] = series.dx.size();
    details["block_length"] = boot.block_length;
    auto manifest = config_manifest("correlations", config);
    manifest.details.update(details);
    finish(config.out_dir, manifest, result, ctx, reported);
    return result;
}

CommandResult cmd_fit(const FitRequest& request, const CommandContext& ctx) {
    const auto prices = read_price_csv(request.prices);
    validate(prices);
    CommandResult result;
    prepare_dir(request.out_dir);
    Manifest manifest;
    manifest.command = "fit";
    manifest.input_name = request.prices.filename().string();
    manifest.input_digest = sha256_file(request.prices);
    manifest.details["n_prices"] = prices.closes.size();

    switch (request.what) {
        case FitTarget::Volatility: {
            manifest.details["what"] = "vol";
            const auto fits = fit_volatility_all(prices);
            write_json(request.out_dir / "fit_vol.json", report_json(fits));
            const auto proxy = volatility_proxy(prices);
            write_fit_density(request.out_dir / "vol_density.csv", density_from_samples(proxy, request.density), fits);
            result.outputs = {"fit_vol.json", "vol_density.csv"};
            for (const auto& f : fits.failures) result.warnings.push_back(std::string(to_string(f.family)) + ": " + f.message);
            break;
        }
        case FitTarget::Returns: {
            manifest.details["what"] = "ret";
            const FamilyKind families[] = {FamilyKind::Normal, FamilyKind::StudentT};
            const auto fits = fit_returns(prices, families);
            write_json(request.out_dir / "fit_ret.json", report_json(fits));
            auto r = log_returns(prices);
            const double m = sample_mean(r);
            for (auto& v : r) v -= m;
            write_fit_density(request.out_dir / "ret_density.csv", density_from_samples(r, request.density), fits);
            result.outputs = {"fit_ret.json", "ret_density.csv"};
            for (const auto& f : fits.failures) result.warnings.push_back(std::string(to_string(f.family)) + ": " + f.message);
            break;
        }
        case FitTarget::Horizons: {
            manifest.details["what"] = "horizons";
            if (request.horizons.empty()) throw Error(ErrorCode::InvalidParams, "empty horizon list");
            for (auto h : request.horizons) {
                if (h < 1) throw Error(ErrorCode::InvalidParams, "horizons must be >= 1 day");
            }
            const auto densities = multi_horizon_densities(prices, request.horizons, request.density);
            std::ostringstream combined;
            csv::Writer combined_writer(combined, {"horizon", "shift", "x", "density", "shifted_density"});
            nlohmann::json meta = nlohmann::json::array();
            for (std::size_t i = 0; i < densities.size(); ++i) {
                const auto& d = densities[i];
                const auto h = request.horizons[i];
                const std::string name = "horizon_h" + std::to_string(h) + ".csv";
                auto out = open_output(request.out_dir / name);
                csv::Writer writer(out, {"x", "density"});
                const double factor = std::pow(10.0, -static_cast<double>(i));
                for (std::size_t j = 0; j < d.grid.size(); ++j) {
                    writer.row(std::vector<double>{d.grid[j], d.density[j]});
                    combined_writer.row(std::vector<double>{static_cast<double>(h), static_cast<double>(i), d.grid[j],
                                                            d.density[j], d.density[j] * factor});
                }
                result.outputs.push_back(name);
                for (const auto& w : d.warnings) result.warnings.push_back("horizon " + std::to_string(h) + ": " + w);
                meta.push_back({{"horizon", h},
                                {"shift", i},
                                {"n_samples", d.n_samples},
                                {"effective_sample_size", d.effective_sample_size},
                                {"overlapping", d.effective_sample_size != static_cast<double>(d.n_samples)},
                                {"binwidth", d.bandwidth_or_binwidth}});
            }
            auto out = open_output(request.out_dir / "horizons_combined.csv");
            out << combined.str();
            result.outputs.push_back("horizons_combined.csv");
            manifest.details["horizons"] = meta;
            break;
        }
    }
    finish(request.out_dir, manifest, result, ctx);
    return result;
}

} // namespace svlab::cli

#include <cumcal/cli.hpp>
#include <cumcal/csv.hpp>
#include <cumcal/errors.hpp>
#include <cumcal/experiments.hpp>
#include <cumcal/plots.hpp>
#include <cumcal/report.hpp>
#include <cumcal/synth.hpp>
#include <cumcal/tail.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

namespace cumcal {

namespace {

namespace fs = std::filesystem;

// Files to write once every result is in hand.
class PendingOutputs
{
public:
    auto add(std::string const& path, std::string contents) -> void
    {
        if (!path.empty()) files_.emplace_back(path, std::move(contents));
    }

    auto commit() const -> void
    {
        for (auto const& [path, contents] : files_) write_file_atomic(path, contents);
    }

private:
    std::vector<std::pair<fs::path, std::string>> files_;
};

auto dump(ReportDocument const& doc) -> std::string { return to_json(doc).dump(2) + "\n"; }

auto print_ece(std::ostream& out, EceReport const& report) -> void
{
    fmt::print(out, "ece1 ({}, m = {}): {:.12g}\n", to_string(report.spec.strategy), report.spec.m, report.ece1);
    fmt::print(out, "ece2 ({}, m = {}): {:.12g}\n", to_string(report.spec.strategy), report.spec.m, report.ece2);
}

auto print_ecce(std::ostream& out, EcceSection const& section) -> void
{
    if (!section.report)
    {
        fmt::print(out, "ecce: {}\n", section.error);
        return;
    }
    auto const& r = *section.report;
    fmt::print(out, "sigma_n: {:.12g}\n", r.sigma_n);
    fmt::print(out, "ecce_mad: {:.12g} (normalized {:.12g}, P = {:.6g})\n", r.ecce_mad, r.mad_normalized, r.p_mad);
    fmt::print(out, "ecce_r: {:.12g} (normalized {:.12g}, P = {:.6g})\n", r.ecce_r, r.r_normalized, r.p_r);
}

struct DatasetOptions
{
    std::string input;
    std::uint64_t seed = 0;
};

auto add_dataset_options(CLI::App& command, DatasetOptions& options) -> void
{
    command.add_option("--input", options.input, "CSV file with header score,response")->required();
    command.add_option("--seed", options.seed, "Seed for ordering tied scores");
}

auto load(DatasetOptions const& options) -> Dataset
{
    auto const pairs = read_csv(options.input);
    return canonicalize(pairs, options.seed);
}

struct BinOptions
{
    std::size_t m = 0;
    std::string strategy = "equispaced";
};

auto add_bin_options(CLI::App& command, BinOptions& options) -> void
{
    command.add_option("--bins", options.m, "Number of bins")->required();
    command.add_option("--strategy", options.strategy, "equispaced or equal-count");
}

auto to_spec(BinOptions const& options) -> BinningSpec
{
    if (options.m < 1) throw ValidationError{"--bins must be at least 1"};
    return {parse_bin_strategy(options.strategy), options.m};
}

} // namespace

auto run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int
{
    CLI::App app{"Calibration assessment: binned and cumulative calibration errors with asymptotic P-values",
                 "cumcal"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string{tool_version});

    std::function<void()> action;

    // compute
    DatasetOptions compute_data;
    BinOptions compute_bins;
    std::string compute_json;
    auto* compute = app.add_subcommand("compute", "ECE, ECCE and P-values for a dataset");
    add_dataset_options(*compute, compute_data);
    add_bin_options(*compute, compute_bins);
    compute->add_option("--json", compute_json, "Write the report as JSON");
    compute->callback([&] {
        action = [&] {
            auto const spec = to_spec(compute_bins);
            auto const ds = load(compute_data);
            auto const binned = ece(ds, spec);
            auto const cumulative = ecce_section(ds, brownian_tails());

            fmt::print(out, "n: {}\n", ds.size());
            print_ece(out, binned);
            print_ecce(out, cumulative);

            ReportDocument const doc{ds.size(),
                                     {{spec.strategy, spec.m, binned.ece1, binned.ece2}},
                                     cumulative,
                                     {compute_data.input, compute_data.seed}};
            PendingOutputs outputs;
            outputs.add(compute_json, dump(doc));
            outputs.commit();
        };
    });

    // cumulative
    DatasetOptions cumulative_data;
    std::string cumulative_svg;
    std::string cumulative_json;
    auto* cumulative = app.add_subcommand("cumulative", "Cumulative-difference plot and ECCE report");
    add_dataset_options(*cumulative, cumulative_data);
    cumulative->add_option("--svg", cumulative_svg, "Write the cumulative plot as SVG");
    cumulative->add_option("--json", cumulative_json, "Write the report as JSON");
    cumulative->callback([&] {
        action = [&] {
            auto const ds = load(cumulative_data);
            auto const section = ecce_section(ds, brownian_tails());
            fmt::print(out, "n: {}\n", ds.size());
            print_ecce(out, section);

            PendingOutputs outputs;
            if (!cumulative_svg.empty())
            {
                if (!section.report) throw ValidationError{section.error};
                PlotSpec const spec{"Cumulative differences", 640, 480, "k/n", "C_k", PlotKind::cumulative};
                outputs.add(cumulative_svg,
                            cumulative_plot(cumulative_curve(ds), section.report->sigma_n, spec, section.report));
            }
            outputs.add(cumulative_json,
                        dump(ReportDocument{ds.size(), {}, section, {cumulative_data.input, cumulative_data.seed}}));
            outputs.commit();
        };
    });

    // reliability
    DatasetOptions reliability_data;
    BinOptions reliability_bins;
    std::size_t bootstrap_curves = 20;
    std::string reliability_svg;
    auto* reliability = app.add_subcommand("reliability", "Reliability diagram with bootstrap curves");
    add_dataset_options(*reliability, reliability_data);
    add_bin_options(*reliability, reliability_bins);
    reliability->add_option("--bootstrap", bootstrap_curves, "Number of bootstrap curves (0 for none)");
    reliability->add_option("--svg", reliability_svg, "Write the diagram as SVG");
    reliability->callback([&] {
        action = [&] {
            auto const spec = to_spec(reliability_bins);
            auto const ds = load(reliability_data);
            auto const binned = ece(ds, spec);
            fmt::print(out, "n: {}\n", ds.size());
            print_ece(out, binned);

            std::optional<BootstrapBand> band;
            if (bootstrap_curves > 0) band = bootstrap_band(ds, spec, bootstrap_curves, reliability_data.seed);

            PendingOutputs outputs;
            if (!reliability_svg.empty())
            {
                PlotSpec const plot{"Reliability diagram", 640, 480, "average score", "average response",
                                    PlotKind::reliability};
                outputs.add(reliability_svg, reliability_diagram(binned.bins, band ? &*band : nullptr, plot));
            }
            outputs.commit();
        };
    });

    // synth
    std::size_t synth_n = 0;
    std::string synth_grid;
    std::string synth_calibration;
    std::uint64_t synth_seed = 0;
    std::string synth_output;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth->add_option("--n", synth_n, "Sample size")->required();
    synth->add_option("--grid", synth_grid, "equispaced, squared or sqrt")->required();
    synth->add_option("--calibration", synth_calibration, "perfect or sine:amp=A,freq=W")->required();
    synth->add_option("--seed", synth_seed, "Master seed")->required();
    synth->add_option("--output", synth_output, "Output CSV")->required();
    synth->callback([&] {
        action = [&] {
            if (synth_n < 1) throw ValidationError{"--n must be at least 1"};
            auto const ds = synthesize(
                {{parse_grid_kind(synth_grid), synth_n}, CalibrationFunction::parse(synth_calibration), synth_seed});
            fmt::print(out, "wrote {} samples to {}\n", ds.size(), synth_output);
            PendingOutputs outputs;
            outputs.add(synth_output, format_csv(to_pairs(ds)));
            outputs.commit();
        };
    });

    // sweep-bins
    DatasetOptions sweep_bins_data;
    std::vector<std::size_t> sweep_bin_counts;
    std::string sweep_bins_csv;
    std::string sweep_bins_svg;
    auto* sweep_bins_command = app.add_subcommand("sweep-bins", "ECE against the number of bins");
    add_dataset_options(*sweep_bins_command, sweep_bins_data);
    sweep_bins_command->add_option("--bins", sweep_bin_counts, "Comma-separated bin counts")
        ->required()
        ->delimiter(',');
    sweep_bins_command->add_option("--csv", sweep_bins_csv, "Write the sweep as CSV");
    sweep_bins_command->add_option("--svg", sweep_bins_svg, "Write the sweep plot as SVG");
    sweep_bins_command->callback([&] {
        action = [&] {
            auto const ds = load(sweep_bins_data);
            auto const result = sweep_bins(ds, sweep_bin_counts);
            fmt::print(out, "{}", format_sweep_csv(result));

            PendingOutputs outputs;
            outputs.add(sweep_bins_csv, format_sweep_csv(result));
            if (!sweep_bins_svg.empty())
                outputs.add(sweep_bins_svg, sweep_plot(result, {"Empirical calibration errors", 900, 480,
                                                                "number of bins", "ECE", PlotKind::sweep_lines}));
            outputs.commit();
        };
    });

    // sweep-n
    SweepNConfig sweep_config;
    std::string sweep_n_csv;
    std::string sweep_n_svg;
    auto* sweep_n_command = app.add_subcommand("sweep-n", "Calibration errors against sample size");
    sweep_n_command->add_option("--sizes", sweep_config.sizes, "Comma-separated sample sizes")->delimiter(',');
    sweep_n_command->add_option("--realizations", sweep_config.realizations, "Datasets averaged per point");
    sweep_n_command->add_option("--draws-per-bin", sweep_config.draws_per_bin, "Samples per equal-count bin");
    sweep_n_command->add_option("--seed", sweep_config.seed, "Master seed")->required();
    sweep_n_command->add_option("--csv", sweep_n_csv, "Write the sweep as CSV");
    sweep_n_command->add_option("--svg", sweep_n_svg, "Write the sweep plot as SVG");
    sweep_n_command->callback([&] {
        action = [&] {
            auto const result = sweep_n(sweep_config);
            fmt::print(out, "{}", format_sweep_csv(result));

            PendingOutputs outputs;
            outputs.add(sweep_n_csv, format_sweep_csv(result));
            if (!sweep_n_svg.empty())
                outputs.add(sweep_n_svg, sweep_plot(result, {"Calibration errors against sample size", 1000, 600,
                                                             "n", "value", PlotKind::sweep_lines}));
            outputs.commit();
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::CallForVersion const&)
    {
        out << tool_version << '\n';
        return exit_ok;
    }
    catch (CLI::ParseError const& error)
    {
        err << "error: " << error.what() << "\n\n" << app.help();
        return exit_validation;
    }

    try
    {
        if (action) action();
        return exit_ok;
    }
    catch (IoError const& error)
    {
        err << "error: " << error.what() << '\n';
        return exit_io;
    }
    catch (ValidationError const& error)
    {
        err << "error: " << error.what() << "\n\n";
        for (auto const* command : app.get_subcommands()) err << command->help();
        return exit_validation;
    }
    catch (std::exception const& error)
    {
        err << "error: " << error.what() << '\n';
        return exit_validation;
    }
}

} // namespace cumcal

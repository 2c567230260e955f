#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdc/analysis.hpp"
#include "spdc/config.hpp"
#include "spdc/errors.hpp"
#include "spdc/io.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct ScanArgs {
    std::string config_path;
    std::string output_path;
    std::string gnuplot_path;
    std::string data_dir;
    unsigned threads = 1;
};

struct SweepArgs {
    std::string config_path;
    std::string output_path;
    std::string parameter;
    std::vector<double> values;
    std::string data_dir;
    unsigned threads = 1;
};

int run_scan(const ScanArgs& args) {
    const auto cfg = spdc::config::load_config(args.config_path);
    spdc::dispersion::MediumStore store(args.data_dir);
    auto setup = spdc::config::build_setup(cfg, store);

    auto spectrum = spdc::detection::angular_scan(
        setup.system, setup.detector, setup.controls, args.threads);
    spectrum.config_echo = cfg.canonical_text();

    std::vector<double> peaks;
    if (setup.system.pump_train().n_pulses == 2)
        peaks = spdc::analysis::predicted_peaks(setup.system, setup.detector);

    spdc::io::write_file(args.output_path,
                         spdc::io::spectrum_csv(spectrum, peaks));
    if (!args.gnuplot_path.empty())
        spdc::io::write_file(args.gnuplot_path,
                             spdc::io::gnuplot_script(args.output_path));
    return 0;
}

int run_criteria(const std::string& config_path, const std::string& data_dir) {
    const auto cfg = spdc::config::load_config(config_path);
    spdc::dispersion::MediumStore store(data_dir);
    auto setup = spdc::config::build_setup(cfg, store);
    const auto report = spdc::analysis::make_report(
        setup.system, setup.detector, setup.thresholds);
    std::cout << report.to_text();
    return 0;
}

int run_sweep(const SweepArgs& args) {
    if (args.values.empty())
        throw spdc::ConfigError("sweep: --values must not be empty");
    const auto base = spdc::config::load_config(args.config_path);
    spdc::dispersion::MediumStore store(args.data_dir);

    std::vector<spdc::io::SweepRow> rows;
    for (double value : args.values) {
        spdc::config::ExperimentConfig cfg = base;
        if (args.parameter == "delay_fs") {
            cfg.pump_delay_fs = value;
            cfg.pump_quartz_length_mm.reset();
            cfg.pump_n_pulses = 2;
        } else if (args.parameter == "filter_fwhm_nm") {
            cfg.filter_fwhm_nm = value;
        } else if (args.parameter == "crystal_length_mm") {
            cfg.crystal_length_mm = value;
        } else {
            throw spdc::ConfigError(
                "sweep: --param must be one of delay_fs, filter_fwhm_nm, "
                "crystal_length_mm");
        }
        cfg.validate();

        const auto t0 = std::chrono::steady_clock::now();
        auto setup = spdc::config::build_setup(cfg, store);
        auto spectrum = spdc::detection::angular_scan(
            setup.system, setup.detector, setup.controls, args.threads);
        const auto window =
            spdc::analysis::central_window(spectrum, setup.window_fraction);
        const auto vis = spdc::analysis::visibility_opt(spectrum, window);
        const auto t1 = std::chrono::steady_clock::now();

        spdc::io::SweepRow row;
        row.parameter = value;
        row.q = spdc::analysis::q_parameter(setup.system);
        row.has_visibility = vis.has_value();
        row.visibility = vis.value_or(0.0);
        row.runtime_s = std::chrono::duration<double>(t1 - t0).count();
        rows.push_back(row);
    }

    spdc::io::write_file(
        args.output_path,
        spdc::io::sweep_csv(args.parameter, base.canonical_text(), rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "spdcsim — angular interference of SPDC pumped by two delayed "
        "ultrashort pulses"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    SweepArgs sweep_args;
    std::string criteria_config;
    std::string criteria_data_dir;

    const std::string default_data = spdc::dispersion::default_data_dir();

    auto* scan = app.add_subcommand(
        "scan", "compute the angular spectrum and write it as CSV");
    scan->add_option("config", scan_args.config_path, "experiment config file")
        ->required();
    scan->add_option("-o,--output", scan_args.output_path, "output CSV path")
        ->required();
    scan->add_option("--gnuplot-script", scan_args.gnuplot_path,
                     "also write a gnuplot script to this path");
    scan->add_option("--data-dir", scan_args.data_dir,
                     "crystal data directory")
        ->default_val(default_data);
    scan->add_option("--threads", scan_args.threads,
                     "worker threads for the scan (results are identical)")
        ->default_val(1);

    auto* criteria = app.add_subcommand(
        "criteria", "print the interference criteria report");
    criteria->add_option("config", criteria_config, "experiment config file")
        ->required();
    criteria->add_option("--data-dir", criteria_data_dir,
                         "crystal data directory")
        ->default_val(default_data);

    auto* sweep = app.add_subcommand(
        "sweep", "scan repeatedly while varying one parameter");
    sweep->add_option("config", sweep_args.config_path,
                      "experiment config file")
        ->required();
    sweep->add_option("--param", sweep_args.parameter,
                      "delay_fs | filter_fwhm_nm | crystal_length_mm")
        ->required();
    sweep->add_option("--values", sweep_args.values,
                      "comma-separated parameter values")
        ->required()
        ->delimiter(',');
    sweep->add_option("-o,--output", sweep_args.output_path,
                      "output CSV path")
        ->required();
    sweep->add_option("--data-dir", sweep_args.data_dir,
                      "crystal data directory")
        ->default_val(default_data);
    sweep->add_option("--threads", sweep_args.threads, "worker threads")
        ->default_val(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (scan->parsed()) return run_scan(scan_args);
        if (criteria->parsed())
            return run_criteria(criteria_config, criteria_data_dir);
        if (sweep->parsed()) return run_sweep(sweep_args);
    } catch (const spdc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalError;
    }
    return 0;
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "aoimac/experiment.hpp"

using namespace aoimac;

int main(int argc, char** argv) {
    CLI::App app{"AoI workbench for TDMA/FDMA short-packet update systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string csv_override;
    std::string svg_dir_override;
    std::uint64_t seed_override = 0;
    int workers_override = 0;
    bool seed_set = false;

    CLI::App* run = app.add_subcommand("run", "run a power sweep from a config file");
    run->add_option("--config", config_path, "flat key=value config file")->required();
    run->add_option("--csv", csv_override, "override output CSV path");
    run->add_option("--svg-dir", svg_dir_override, "override SVG output directory");
    run->add_option("--seed", seed_override, "override the experiment seed")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--workers", workers_override, "override worker thread count");

    std::string report_csv;
    CLI::App* report = app.add_subcommand("report", "summarize a results CSV");
    report->add_option("--csv", report_csv, "results CSV to summarize")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        ExperimentConfig cfg;
        try {
            cfg = parse_config(config_path);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return kExitConfig;
        } catch (const IoError& e) {
            std::cerr << "io error: " << e.what() << "\n";
            return kExitIo;
        }
        if (!csv_override.empty()) cfg.csv_path = csv_override;
        if (!svg_dir_override.empty()) cfg.svg_dir = svg_dir_override;
        if (seed_set) {
            cfg.seed = seed_override;
            cfg.sweep.per_model.seed = seed_override;
        }
        if (workers_override > 0) cfg.workers = workers_override;

        try {
            const auto rows = run_experiment(cfg);
            std::cout << "wrote " << rows.size() << " rows to " << cfg.csv_path << "\n";
            if (!cfg.svg_dir.empty()) std::cout << "plots in " << cfg.svg_dir << "\n";
        } catch (const IoError& e) {
            std::cerr << "io error: " << e.what() << "\n";
            return kExitIo;
        } catch (const std::exception& e) {
            std::cerr << "numeric error: " << e.what() << "\n";
            return kExitNumeric;
        }
        return kExitOk;
    }

    // report
    std::ifstream in(report_csv);
    if (!in) {
        std::cerr << "io error: cannot open " << report_csv << "\n";
        return kExitIo;
    }
    try {
        std::cout << compare_report(parse_csv(in));
    } catch (const ConfigError& e) {
        std::cerr << "csv error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aoimac/optimizer.hpp"

namespace aoimac {

/// Exit codes shared by the CLI subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumeric = 3,
    kExitIo = 4,
};

/// Thrown on config validation failures; message carries line-numbered
/// diagnostics.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A full experiment description, parsed from a flat key=value file.
struct ExperimentConfig {
    SystemConfig system;
    SweepSpec sweep;
    std::vector<Scheme> schemes{Scheme::Tdma, Scheme::Fdma};
    std::size_t renewals = 1'000'000;  ///< W for the renewal simulator
    std::uint64_t seed = 0;
    int workers = 1;
    std::string csv_path = "results.csv";
    std::string svg_dir;  ///< empty disables plot output
};

/// One CSV row: fixed column order, floats at 9 significant digits.
struct ResultRow {
    Scheme scheme = Scheme::Tdma;
    int users = 0;
    double power_db = 0.0;
    int source_bits = 0;
    int best_l = 0;
    double per = 0.0;
    double avg_aoi_analytic = 0.0;
    double avg_aoi_sim = 0.0;
    double bounded_aoi_sim = 0.0;
    double bounded_aoi_chebyshev = 0.0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "scheme,N,power_db,K,best_l,per,avg_aoi_analytic,avg_aoi_sim,"
    "bounded_aoi_sim,bounded_aoi_chebyshev,gamma,seed";

/// Parse and validate a config file. Throws ConfigError with "line N:"
/// prefixed messages.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Evaluate the whole sweep: one row per (scheme, power), sorted by
/// (scheme, power). Rows are fanned out across cfg.workers threads; per-row
/// seeds keep the result independent of scheduling.
std::vector<ResultRow> evaluate_experiment(const ExperimentConfig& cfg);

std::string format_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(std::istream& in);

/// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Polyline SVG charts: one file per metric (average_aoi.svg,
/// bounded_aoi.svg) with theory and simulation series per scheme.
void render_svg_plots(const std::vector<ResultRow>& rows, const std::filesystem::path& dir);

/// Full run: evaluate, write CSV (and SVGs when configured). Returns the
/// rows it wrote.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// Per-power winner summary plus the bounded-AoI crossover power, if any.
std::string compare_report(const std::vector<ResultRow>& rows);

}  // namespace aoimac

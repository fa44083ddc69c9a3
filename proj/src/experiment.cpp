#include "aoimac/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "aoimac/seed.hpp"
#include "aoimac/simulator.hpp"

namespace aoimac {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw ConfigError("line " + std::to_string(line) + ": trailing junk in number: '" + v + "'");
    return x;
}

long long parse_int(const std::string& v, int line) {
    const double x = parse_double(v, line);
    if (x != std::floor(x) || std::abs(x) > 9e18)
        throw ConfigError("line " + std::to_string(line) + ": expected an integer: '" + v + "'");
    return static_cast<long long>(x);
}

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

Scheme parse_scheme(const std::string& v, int line) {
    if (v == "tdma") return Scheme::Tdma;
    if (v == "fdma") return Scheme::Fdma;
    throw ConfigError("line " + std::to_string(line) + ": unknown scheme '" + v +
                      "' (expected tdma or fdma)");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.system.powers = {1.0};  // placeholder; rows carry their own power

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (const auto hash = s.find('#'); hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty key or value");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");

        if (key == "users") {
            cfg.system.users = static_cast<int>(parse_int(value, line));
        } else if (key == "bandwidth") {
            cfg.system.bandwidth = parse_double(value, line);
        } else if (key == "gamma") {
            cfg.system.gamma = parse_double(value, line);
        } else if (key == "source_bits") {
            cfg.system.source_bits = static_cast<int>(parse_int(value, line));
        } else if (key == "powers_db") {
            cfg.sweep.powers_db.clear();
            for (const std::string& v : split(value, ','))
                cfg.sweep.powers_db.push_back(parse_double(v, line));
        } else if (key == "schemes") {
            cfg.schemes.clear();
            for (const std::string& v : split(value, ','))
                cfg.schemes.push_back(parse_scheme(v, line));
        } else if (key == "per_model") {
            if (value == "fixed")
                cfg.sweep.per_model.kind = PerModel::Kind::Fixed;
            else if (value == "rcb")
                cfg.sweep.per_model.kind = PerModel::Kind::Rcb;
            else if (value == "ldpc")
                cfg.sweep.per_model.kind = PerModel::Kind::Ldpc;
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown per_model '" +
                                  value + "' (expected fixed, rcb or ldpc)");
        } else if (key == "fixed_per") {
            cfg.sweep.per_model.fixed_per = parse_double(value, line);
        } else if (key == "ldpc_min_errors") {
            cfg.sweep.per_model.min_errors = static_cast<int>(parse_int(value, line));
        } else if (key == "ldpc_max_trials") {
            cfg.sweep.per_model.max_trials = parse_int(value, line);
        } else if (key == "ldpc_max_iter") {
            cfg.sweep.per_model.max_iter = static_cast<int>(parse_int(value, line));
        } else if (key == "l_min") {
            cfg.sweep.l_min = static_cast<int>(parse_int(value, line));
        } else if (key == "l_max") {
            cfg.sweep.l_max = static_cast<int>(parse_int(value, line));
        } else if (key == "l_step") {
            cfg.sweep.l_step = static_cast<int>(parse_int(value, line));
        } else if (key == "metric") {
            if (value == "average")
                cfg.sweep.metric = Metric::Average;
            else if (value == "bounded")
                cfg.sweep.metric = Metric::Bounded;
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown metric '" + value +
                                  "' (expected average or bounded)");
        } else if (key == "renewals") {
            const long long w = parse_int(value, line);
            if (w < 1) throw ConfigError("line " + std::to_string(line) + ": renewals must be >= 1");
            cfg.renewals = static_cast<std::size_t>(w);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(value, line));
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(parse_int(value, line));
        } else if (key == "csv") {
            cfg.csv_path = value;
        } else if (key == "svg_dir") {
            cfg.svg_dir = value;
        } else {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }

    try {
        cfg.system.validate();
        cfg.sweep.validate(cfg.system.source_bits);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.schemes.empty()) throw ConfigError("config: schemes must be nonempty");
    if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
    cfg.sweep.per_model.seed = cfg.seed;
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

ResultRow evaluate_row(const ExperimentConfig& cfg, Scheme scheme, double power_db,
                       std::uint64_t row_seed) {
    SystemConfig sys = cfg.system;
    sys.powers = {db_to_linear(power_db)};

    SweepSpec spec = cfg.sweep;
    spec.powers_db = {power_db};
    const OptimumPoint best = optimize_blocklength(sys, spec, scheme).front();

    const AoiStats stats = scheme == Scheme::Tdma ? tdma_aoi(sys, best.best_l, best.per_at_best)
                                                  : fdma_aoi(sys, best.best_l, best.per_at_best);

    const SchemeTiming timing = scheme_timing(scheme, sys.users, best.best_l, sys.bandwidth);
    const RenewalBatch batch = draw_renewals(best.per_at_best, timing, cfg.renewals, row_seed);
    const auto [emp_mean, emp_second] = empirical_average_aoi(batch);
    (void)emp_second;

    ResultRow row;
    row.scheme = scheme;
    row.users = sys.users;
    row.power_db = power_db;
    row.source_bits = sys.source_bits;
    row.best_l = best.best_l;
    row.per = best.per_at_best;
    row.avg_aoi_analytic = stats.mean;
    row.avg_aoi_sim = emp_mean;
    row.bounded_aoi_sim = empirical_bounded_aoi(batch, sys.gamma);
    row.bounded_aoi_chebyshev = stats.bounded_upper;
    row.gamma = sys.gamma;
    row.seed = cfg.seed;
    return row;
}

}  // namespace

std::vector<ResultRow> evaluate_experiment(const ExperimentConfig& cfg) {
    struct Task {
        Scheme scheme;
        double power_db;
        std::uint64_t row_seed;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s)
        for (std::size_t p = 0; p < cfg.sweep.powers_db.size(); ++p)
            tasks.push_back({cfg.schemes[s], cfg.sweep.powers_db[p],
                             derive_seed(cfg.seed, static_cast<std::uint64_t>(s),
                                         static_cast<std::uint64_t>(p))});

    std::vector<ResultRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
    const auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            try {
                rows[i] = evaluate_row(cfg, tasks[i].scheme, tasks[i].power_db, tasks[i].row_seed);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        return a.power_db < b.power_db;
    });
    return rows;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += to_string(r.scheme);
        out += ',';
        out += std::to_string(r.users);
        out += ',';
        out += fmt9(r.power_db);
        out += ',';
        out += std::to_string(r.source_bits);
        out += ',';
        out += std::to_string(r.best_l);
        out += ',';
        out += fmt9(r.per);
        out += ',';
        out += fmt9(r.avg_aoi_analytic);
        out += ',';
        out += fmt9(r.avg_aoi_sim);
        out += ',';
        out += fmt9(r.bounded_aoi_sim);
        out += ',';
        out += fmt9(r.bounded_aoi_chebyshev);
        out += ',';
        out += fmt9(r.gamma);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader)
        throw ConfigError("csv: missing or unexpected header row");
    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 12)
            throw ConfigError("csv line " + std::to_string(lineno) + ": expected 12 fields, got " +
                              std::to_string(f.size()));
        ResultRow r;
        r.scheme = parse_scheme(f[0], lineno);
        r.users = static_cast<int>(parse_int(f[1], lineno));
        r.power_db = parse_double(f[2], lineno);
        r.source_bits = static_cast<int>(parse_int(f[3], lineno));
        r.best_l = static_cast<int>(parse_int(f[4], lineno));
        r.per = parse_double(f[5], lineno);
        r.avg_aoi_analytic = parse_double(f[6], lineno);
        r.avg_aoi_sim = parse_double(f[7], lineno);
        r.bounded_aoi_sim = parse_double(f[8], lineno);
        r.bounded_aoi_chebyshev = parse_double(f[9], lineno);
        r.gamma = parse_double(f[10], lineno);
        r.seed = static_cast<std::uint64_t>(parse_int(f[11], lineno));
        rows.push_back(r);
    }
    return rows;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << contents;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

namespace {

struct Series {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (power_db, value)
};

std::string svg_line_chart(const std::string& title, const std::string& y_label,
                           const std::vector<Series>& series) {
    constexpr double kW = 720, kH = 480;
    constexpr double kLeft = 80, kRight = 20, kTop = 40, kBottom = 50;

    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const Series& s : series)
        for (auto [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    if (x_max <= x_min) x_max = x_min + 1;
    if (y_max <= y_min) y_max = y_min + 1;
    y_min = 0.0;  // AoI axes start at zero
    const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * (kW - kLeft - kRight); };
    const auto py = [&](double y) { return kH - kBottom - (y - y_min) / (y_max - y_min) * (kH - kTop - kBottom); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";

    // axes + ticks
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight
        << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kH - kBottom << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        const double yv = y_min + (y_max - y_min) * i / 5.0;
        svg << "<text x=\"" << px(xv) << "\" y=\"" << kH - kBottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt9(std::round(xv * 100) / 100)
            << "</text>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt9(std::round(yv * 10) / 10)
            << "</text>\n";
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << py(yv) << "\" x2=\"" << kW - kRight
            << "\" y2=\"" << py(yv) << "\" stroke=\"#dddddd\"/>\n";
    }
    svg << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">received power P (dB)</text>\n";
    svg << "<text x=\"18\" y=\"" << kH / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " << kH / 2
        << ")\">" << y_label << "</text>\n";

    double legend_y = kTop + 8;
    for (const Series& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.points) svg << px(x) << "," << py(y) << " ";
        svg << "\"/>\n";
        for (auto [x, y] : s.points)
            svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\""
                << s.color << "\"/>\n";
        svg << "<line x1=\"" << kW - 200 << "\" y1=\"" << legend_y << "\" x2=\"" << kW - 170
            << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << kW - 164 << "\" y=\"" << legend_y + 4 << "\" font-size=\"12\">"
            << s.name << "</text>\n";
        legend_y += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

void render_svg_plots(const std::vector<ResultRow>& rows, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create svg directory: " + dir.string());

    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};
    std::vector<Series> avg, bounded;
    for (Scheme scheme : {Scheme::Tdma, Scheme::Fdma}) {
        Series theory{std::string(to_string(scheme)) + " theory", colors[avg.size()], {}};
        Series sim{std::string(to_string(scheme)) + " sim", colors[avg.size() + 1], {}};
        Series cheb{std::string(to_string(scheme)) + " chebyshev", colors[bounded.size()], {}};
        Series bsim{std::string(to_string(scheme)) + " sim", colors[bounded.size() + 1], {}};
        for (const ResultRow& r : rows) {
            if (r.scheme != scheme) continue;
            theory.points.emplace_back(r.power_db, r.avg_aoi_analytic);
            sim.points.emplace_back(r.power_db, r.avg_aoi_sim);
            cheb.points.emplace_back(r.power_db, r.bounded_aoi_chebyshev);
            bsim.points.emplace_back(r.power_db, r.bounded_aoi_sim);
        }
        if (!theory.points.empty()) {
            avg.push_back(theory);
            avg.push_back(sim);
            bounded.push_back(cheb);
            bounded.push_back(bsim);
        }
    }
    write_file_atomic(dir / "average_aoi.svg",
                      svg_line_chart("Average AoI vs received power", "average AoI", avg));
    write_file_atomic(dir / "bounded_aoi.svg",
                      svg_line_chart("Bounded AoI vs received power", "bounded AoI", bounded));
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    std::vector<ResultRow> rows = evaluate_experiment(cfg);
    write_file_atomic(cfg.csv_path, format_csv(rows));
    if (!cfg.svg_dir.empty()) render_svg_plots(rows, cfg.svg_dir);
    return rows;
}

std::string compare_report(const std::vector<ResultRow>& rows) {
    std::map<double, std::map<Scheme, const ResultRow*>> by_power;
    for (const ResultRow& r : rows) by_power[r.power_db][r.scheme] = &r;

    std::ostringstream out;
    int tdma_avg_wins = 0, fdma_avg_wins = 0;
    std::vector<std::pair<double, Scheme>> bounded_winners;
    for (const auto& [power, schemes] : by_power) {
        const auto td = schemes.find(Scheme::Tdma);
        const auto fd = schemes.find(Scheme::Fdma);
        if (td == schemes.end() || fd == schemes.end()) {
            out << "P=" << fmt9(power) << " dB: only one scheme present, skipped\n";
            continue;
        }
        const ResultRow& t = *td->second;
        const ResultRow& f = *fd->second;
        const Scheme avg_winner = t.avg_aoi_sim <= f.avg_aoi_sim ? Scheme::Tdma : Scheme::Fdma;
        const Scheme bnd_winner =
            t.bounded_aoi_sim <= f.bounded_aoi_sim ? Scheme::Tdma : Scheme::Fdma;
        (avg_winner == Scheme::Tdma ? tdma_avg_wins : fdma_avg_wins)++;
        bounded_winners.emplace_back(power, bnd_winner);
        out << "P=" << fmt9(power) << " dB: average winner " << to_string(avg_winner) << " ("
            << fmt9(t.avg_aoi_sim) << " vs " << fmt9(f.avg_aoi_sim) << "), bounded winner "
            << to_string(bnd_winner) << " (" << fmt9(t.bounded_aoi_sim) << " vs "
            << fmt9(f.bounded_aoi_sim) << ")\n";
    }

    if (!bounded_winners.empty()) {
        if (tdma_avg_wins > 0 && fdma_avg_wins == 0)
            out << "tdma uniformly better on average AoI\n";
        else if (fdma_avg_wins > 0 && tdma_avg_wins == 0)
            out << "fdma uniformly better on average AoI\n";

        const Scheme first = bounded_winners.front().second;
        bool flipped = false;
        for (const auto& [power, winner] : bounded_winners) {
            if (winner != first) {
                out << "bounded-AoI crossover at " << fmt9(power) << " dB ("
                    << to_string(first) << " -> " << to_string(winner) << ")\n";
                flipped = true;
                break;
            }
        }
        if (!flipped) out << "no bounded-AoI crossover in the swept range\n";
    }
    return out.str();
}

}  // namespace aoimac

// Acceptance suite: each criterion prints exactly one PASS/FAIL line.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "aoimac/experiment.hpp"
#include "aoimac/ldpc.hpp"
#include "aoimac/simulator.hpp"
#include "oracles.hpp"

using namespace aoimac;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s - criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

SystemConfig make_cfg(int users) {
    SystemConfig cfg;
    cfg.users = users;
    cfg.bandwidth = 1.0;
    cfg.powers = {1.0};
    cfg.source_bits = 100;
    cfg.gamma = 0.99;
    return cfg;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// 1. High-SNR (p = 0) closed forms, exact to 1e-12 relative.
void criterion1() {
    bool ok = true;
    std::string detail;
    for (int n : {1, 2, 10}) {
        for (int l : {100, 400}) {
            const AoiStats td = tdma_aoi(make_cfg(n), l, 0.0);
            const AoiStats fd = fdma_aoi(make_cfg(n), l, 0.0);
            const double want_td = (1.0 + n / 2.0) * l;
            const double want_fd = 1.5 * n * l;
            const double want_var = static_cast<double>(n) * n * l * l / 12.0;
            ok = ok && close_rel(td.mean, want_td, 1e-12) && close_rel(fd.mean, want_fd, 1e-12) &&
                 close_rel(td.variance, want_var, 1e-12) && close_rel(fd.variance, want_var, 1e-12);
        }
    }
    report(1, "p=0 closed forms for N in {1,2,10}, L in {100,400}", ok,
           ok ? "all exact to 1e-12 rel" : "mismatch");
}

// 2. Geometric moments vs the truncated brute-force oracle.
void criterion2() {
    bool ok = true;
    double worst = 0.0;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const GeomMoments m = geom_moments(p);
        for (auto [got, k] : {std::pair{m.m1, 1}, std::pair{m.m2, 2}, std::pair{m.m3, 3}}) {
            const double want = oracles::geom_moment_truncated(p, k);
            worst = std::max(worst, std::abs(got - want) / want);
            ok = ok && close_rel(got, want, 1e-9);
        }
    }
    const bool footnote = close_rel(geom_moments(0.5).m3, 26.0, 1e-12);
    ok = ok && footnote;
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst rel err %.2e; E[X^3](p=0.5) = %g (oracle 26)", worst,
                  geom_moments(0.5).m3);
    report(2, "geometric-moment oracle", ok, buf);
}

// 3. Renewal simulator within 1% of the closed forms at W = 1e6.
void criterion3() {
    bool ok = true;
    double worst = 0.0;
    double slowest = 0.0;
    std::uint64_t seed = 1000;
    for (int n : {2, 10}) {
        for (double p : {0.1, 0.3, 0.5}) {
            for (Scheme scheme : {Scheme::Tdma, Scheme::Fdma}) {
                const auto t0 = std::chrono::steady_clock::now();
                const RenewalBatch batch =
                    draw_renewals(p, scheme_timing(scheme, n, 100, 1.0), 1'000'000, seed++);
                const double got = empirical_average_aoi(batch).first;
                const double want = scheme == Scheme::Tdma ? tdma_aoi(make_cfg(n), 100, p).mean
                                                           : fdma_aoi(make_cfg(n), 100, p).mean;
                const double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                slowest = std::max(slowest, secs);
                worst = std::max(worst, std::abs(got - want) / want);
                ok = ok && close_rel(got, want, 0.01) && secs < 60.0;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst rel err %.3f%%, slowest point %.2fs", worst * 100.0,
                  slowest);
    report(3, "renewal simulator vs analytics at W=1e6", ok, buf);
}

// 4. Empirical bounded AoI never exceeds the Chebyshev bound.
void criterion4() {
    bool ok = true;
    double min_gap = 1e300;
    std::uint64_t seed = 2000;
    for (int n : {2, 10}) {
        for (double p : {0.1, 0.3, 0.5, 0.7}) {
            for (Scheme scheme : {Scheme::Tdma, Scheme::Fdma}) {
                const RenewalBatch batch =
                    draw_renewals(p, scheme_timing(scheme, n, 100, 1.0), 1'000'000, seed++);
                const double emp = empirical_bounded_aoi(batch, 0.99);
                const AoiStats stats = scheme == Scheme::Tdma ? tdma_aoi(make_cfg(n), 100, p)
                                                              : fdma_aoi(make_cfg(n), 100, p);
                min_gap = std::min(min_gap, stats.bounded_upper - emp);
                ok = ok && emp <= stats.bounded_upper;
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "smallest bound-minus-sim gap %.3g", min_gap);
    report(4, "Chebyshev dominance at gamma=0.99", ok, buf);
}

// 5. TDMA average AoI is 50% +- 10pp of FDMA's at N=10, P=4 dB, optimized L.
void criterion5() {
    SweepSpec spec;
    spec.l_min = 100;
    spec.l_max = 400;
    spec.l_step = 10;
    spec.metric = Metric::Average;
    spec.per_model = PerModel::rcb();
    spec.powers_db = {4.0};
    const SystemConfig cfg = make_cfg(10);
    const double td = optimize_blocklength(cfg, spec, Scheme::Tdma).front().best_value;
    const double fd = optimize_blocklength(cfg, spec, Scheme::Fdma).front().best_value;
    const double ratio = td / fd;
    const bool ok = ratio >= 0.4 && ratio <= 0.6;
    char buf[96];
    std::snprintf(buf, sizeof buf, "tdma %.1f, fdma %.1f, ratio %.3f (target 0.5 +- 0.1)", td, fd,
                  ratio);
    report(5, "headline 50% average-AoI reduction at N=10, P=4dB", ok, buf);
}

// 6. Bounded-AoI crossover shape across an N=10 power sweep.
void criterion6() {
    ExperimentConfig cfg;
    cfg.system = make_cfg(10);
    cfg.sweep.l_min = 100;
    cfg.sweep.l_max = 400;
    cfg.sweep.l_step = 10;
    cfg.sweep.metric = Metric::Bounded;
    cfg.sweep.per_model = PerModel::rcb();
    cfg.sweep.powers_db = {-2.0, 0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
    cfg.renewals = 200'000;
    cfg.seed = 6;
    cfg.workers = 4;
    const std::vector<ResultRow> rows = evaluate_experiment(cfg);

    std::vector<double> td_bnd, fd_bnd;
    for (const ResultRow& r : rows)
        (r.scheme == Scheme::Tdma ? td_bnd : fd_bnd).push_back(r.bounded_aoi_sim);

    const bool fdma_wins_low = fd_bnd.front() < td_bnd.front();
    const bool tdma_wins_high = td_bnd.back() < fd_bnd.back();
    bool crossover = false;
    for (std::size_t i = 0; i < td_bnd.size(); ++i)
        crossover = crossover || (fd_bnd[i] < td_bnd[i]) != (fd_bnd[0] < td_bnd[0]);
    const bool ok = fdma_wins_low && tdma_wins_high && crossover;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "at %.0f dB tdma %.0f vs fdma %.0f; at %.0f dB tdma %.0f vs fdma %.0f",
                  cfg.sweep.powers_db.front(), td_bnd.front(), fd_bnd.front(),
                  cfg.sweep.powers_db.back(), td_bnd.back(), fd_bnd.back());
    report(6, "bounded-AoI crossover across the power sweep", ok, buf);
}

// 7. RCB properties and the independent quadrature oracle.
void criterion7() {
    bool ok = true;
    for (double snr : {0.5, 2.0, 8.0}) {
        double prev = 2.0;
        for (double r : {0.25, 0.4, 0.55, 0.7, 0.85, 1.0}) {
            const double eg = error_exponent(r, ChannelSnr{snr}).e_g;
            ok = ok && eg <= prev + 1e-9;
            prev = eg;
        }
    }
    double prev = 1.1;
    for (int l : {100, 150, 200, 300, 400}) {
        const double p = per_estimate(100, l, ChannelSnr{4.0}).per;
        ok = ok && p <= prev + 1e-15;
        prev = p;
    }
    prev = 1.1;
    for (double snr : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double p = per_estimate(100, 200, ChannelSnr{snr}).per;
        ok = ok && p <= prev + 1e-15;
        prev = p;
    }
    const double rhos[] = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0, 0.33, 0.66, 0.95};
    const double snrs[] = {0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 0.8, 3.0, 6.0};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double err =
            std::abs(e0(rhos[i], ChannelSnr{snrs[i]}) - oracles::e0_simpson(rhos[i], snrs[i]));
        worst = std::max(worst, err);
        ok = ok && err < 1e-8;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst e0 oracle error %.2e", worst);
    report(7, "RCB monotonicity and quadrature oracle", ok, buf);
}

// 8. LDPC pipeline: noiseless success and Monte-Carlo PER monotone in snr.
void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const PerMeasurement clean = estimate_per(100, 200, ChannelSnr{1e6}, 1001, 1000, 81);
    bool ok = clean.trials == 1000 && clean.errors == 0;

    std::string pers = "pers:";
    double prev = 1.1;
    bool enough_errors = true;
    for (double db : {0.0, 2.0, 4.0, 6.0, 8.0}) {
        const PerMeasurement m = estimate_per(100, 200, ChannelSnr{std::pow(10.0, db / 10.0)},
                                              100, 1'000'000, 82);
        enough_errors = enough_errors && (m.errors >= 100 || m.trials >= 1'000'000);
        ok = ok && m.per_hat <= prev;
        prev = m.per_hat;
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.3g", m.per_hat);
        pers += buf;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && enough_errors && secs < 600.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "noiseless errors %ld/1000; %s; %.0fs", clean.errors,
                  pers.c_str(), secs);
    report(8, "LDPC pipeline noiseless success and snr monotonicity", ok, buf);
}

// 9. Byte-identical CSV replay regardless of worker count.
void criterion9() {
    ExperimentConfig cfg;
    cfg.system = make_cfg(2);
    cfg.sweep.l_min = 100;
    cfg.sweep.l_max = 400;
    cfg.sweep.l_step = 50;
    cfg.sweep.per_model = PerModel::rcb();
    cfg.sweep.powers_db = {0.0, 4.0, 8.0};
    cfg.renewals = 100'000;
    cfg.seed = 99;

    cfg.workers = 1;
    const std::string a = format_csv(evaluate_experiment(cfg));
    cfg.workers = 4;
    const std::string b = format_csv(evaluate_experiment(cfg));
    cfg.workers = 7;
    const std::string c = format_csv(evaluate_experiment(cfg));
    const bool ok = a == b && b == c && !a.empty();
    report(9, "deterministic CSV replay across worker counts", ok,
           ok ? "identical bytes for 1/4/7 workers" : "replays differ");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}

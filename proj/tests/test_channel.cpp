#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aoimac/channel.hpp"
#include "oracles.hpp"

using namespace aoimac;

TEST_CASE("effective snr per scheme") {
    CHECK(effective_snr(Scheme::Tdma, 10, 1.0, 2.0).snr == doctest::Approx(2.0));
    CHECK(effective_snr(Scheme::Fdma, 10, 1.0, 2.0).snr == doctest::Approx(20.0));
    // N = 1 degenerate case: the schemes coincide
    CHECK(effective_snr(Scheme::Fdma, 1, 1.0, 5.0).snr == doctest::Approx(5.0));
    CHECK_THROWS_AS(effective_snr(Scheme::Tdma, 0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(effective_snr(Scheme::Tdma, 2, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(effective_snr(Scheme::Tdma, 2, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("e0 endpoints") {
    CHECK(e0(0.0, ChannelSnr{3.0}) == 0.0);
    CHECK(e0(0.0, ChannelSnr{0.0}) == 0.0);
    CHECK(e0(1.0, ChannelSnr{0.0}) == 0.0);
    CHECK_THROWS_AS(e0(-0.1, ChannelSnr{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(e0(1.1, ChannelSnr{1.0}), std::invalid_argument);
}

TEST_CASE("e0 matches the independent quadrature oracle") {
    CHECK(e0(1.0, ChannelSnr{10.0}) > 0.0);
    CHECK(e0(1.0, ChannelSnr{10.0}) <= 1.0);
    CHECK(e0(1.0, ChannelSnr{10.0}) == doctest::Approx(oracles::e0_simpson(1.0, 10.0)).epsilon(1e-8));

    const double rhos[] = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0, 0.33, 0.66, 0.95};
    const double snrs[] = {0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 0.8, 3.0, 6.0};
    for (int i = 0; i < 10; ++i) {
        const double got = e0(rhos[i], ChannelSnr{snrs[i]});
        const double want = oracles::e0_simpson(rhos[i], snrs[i]);
        CHECK(std::abs(got - want) < 1e-8);
    }
}

TEST_CASE("e0 monotone in rho and snr on a 20x20 grid") {
    for (int i = 0; i < 20; ++i) {
        const double snr = 0.25 * (i + 1);
        double prev = e0(0.0, ChannelSnr{snr});
        for (int j = 1; j < 20; ++j) {
            const double cur = e0(j / 19.0, ChannelSnr{snr});
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
    for (int j = 1; j < 20; ++j) {
        const double rho = j / 19.0;
        double prev = e0(rho, ChannelSnr{0.25});
        for (int i = 1; i < 20; ++i) {
            const double cur = e0(rho, ChannelSnr{0.25 * (i + 1)});
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("error exponent at zero snr is zero with rho tie-broken to 0") {
    const ExponentResult ex = error_exponent(0.5, ChannelSnr{0.0});
    CHECK(ex.e_g == 0.0);
    CHECK(ex.rho_star == 0.0);
}

TEST_CASE("error exponent matches a dense grid search") {
    const ChannelSnr ch{4.0};
    const ExponentResult ex = error_exponent(0.5, ch);
    double grid_best = 0.0;
    for (int i = 0; i <= 10'000; ++i) {
        const double rho = i / 10'000.0;
        grid_best = std::max(grid_best, oracles::e0_simpson(rho, ch.snr, 1 << 16) - rho * 0.5);
    }
    CHECK(ex.e_g == doctest::Approx(grid_best).epsilon(1e-6));
    CHECK(ex.e_g <= e0(1.0, ch) + 1e-12);
    CHECK(ex.rho_star >= 0.0);
    CHECK(ex.rho_star <= 1.0);
}

TEST_CASE("error exponent nonincreasing in rate") {
    for (double snr : {0.5, 2.0, 8.0}) {
        CHECK(error_exponent(0.3, ChannelSnr{snr}).e_g >=
              error_exponent(0.6, ChannelSnr{snr}).e_g - 1e-9);
        CHECK(error_exponent(0.3, ChannelSnr{snr}).e_g >= 0.0);
    }
}

TEST_CASE("per estimate") {
    CHECK(per_estimate(100, 200, ChannelSnr{0.0}).per == doctest::Approx(1.0));
    CHECK_THROWS_AS(per_estimate(201, 200, ChannelSnr{1.0}), std::invalid_argument);

    // Rate-1 code at high snr: per = 2^{-L*(E0(1)-1)} against the oracle.
    const double e0_high = oracles::e0_simpson(1.0, 100.0);
    const double want = std::min(1.0, std::exp2(-100.0 * (e0_high - 1.0)));
    CHECK(per_estimate(100, 100, ChannelSnr{100.0}).per == doctest::Approx(want).epsilon(1e-6));

    // Lower rate + longer block never raises the bound.
    const double p400 = per_estimate(100, 400, ChannelSnr{4.0}).per;
    const double p200 = per_estimate(100, 200, ChannelSnr{4.0}).per;
    CHECK(p400 <= p200 + 1e-15);
}

TEST_CASE("per estimate monotone in block length and snr") {
    const ChannelSnr ch{4.0};
    double prev = 1.1;
    for (int l : {100, 150, 200, 300, 400}) {
        const double p = per_estimate(100, l, ch).per;
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
    prev = 1.1;
    for (double snr : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double p = per_estimate(100, 200, ChannelSnr{snr}).per;
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
}

#pragma once

#include <cstdint>
#include <vector>

#include "aoimac/analytics.hpp"
#include "aoimac/channel.hpp"
#include "aoimac/per_model.hpp"

namespace aoimac {

/// Timing of one user's decode opportunities.
///
/// TDMA: packet duration T = L/B, the user's slot recurs every N*T.
/// FDMA: packet duration T = N*L/B, back-to-back packets, so the renewal
/// scale equals T.
struct SchemeTiming {
    Scheme scheme = Scheme::Tdma;
    double packet_duration = 0.0;
    double renewal_scale = 0.0;
};

SchemeTiming scheme_timing(Scheme scheme, int users, int block_len, double bandwidth);

/// Sampled inter-success counts plus the timing needed to turn them into a
/// sawtooth. Each sample X_w spans one renewal: X_w - 1 failures then a
/// success, during which the age ramps linearly from packet_duration to
/// packet_duration + X_w * renewal_scale.
struct RenewalBatch {
    std::vector<std::uint32_t> samples;
    SchemeTiming timing;
    double per = 0.0;
};

struct UserAoiSummary {
    double emp_mean = 0.0;
    double emp_second_moment = 0.0;
    double emp_bounded = 0.0;
    double per = 0.0;
    std::size_t cycles = 0;
};

struct AoiTraceSummary {
    double emp_mean = 0.0;            ///< network average of per-user means
    double emp_second_moment = 0.0;   ///< network average of per-user second moments
    double emp_bounded = 0.0;         ///< max over users (all must satisfy the threshold)
    double total_time = 0.0;          ///< observed time across users
    std::vector<UserAoiSummary> users;
};

/// i.i.d. geometric inter-success counts on {1,2,...} with success
/// probability 1-per; reproducible per seed.
RenewalBatch draw_renewals(double per, SchemeTiming timing, std::size_t count,
                           std::uint64_t seed);

/// Exact time averages of the piecewise-linear sawtooth assembled from the
/// batch: (mean, second moment).
std::pair<double, double> empirical_average_aoi(const RenewalBatch& batch);

/// Exact fraction of time the instantaneous age is <= threshold.
double aoi_time_fraction(const RenewalBatch& batch, double threshold);

/// Smallest threshold covering a gamma fraction of time (bisection to 1e-9
/// relative).
double empirical_bounded_aoi(const RenewalBatch& batch, double gamma);

/// Slot-level simulation: every user's decode instants are walked for
/// horizon_rounds rounds, per-packet success drawn from the PerModel at the
/// user's own received power. Statistics cover completed renewal cycles
/// only (time before a user's first success is excluded).
AoiTraceSummary simulate_slot_level(const SystemConfig& cfg, Scheme scheme, int block_len,
                                    const PerModel& per_model, long horizon_rounds,
                                    std::uint64_t seed);

}  // namespace aoimac

#include "aoimac/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "aoimac/ldpc.hpp"
#include "aoimac/seed.hpp"

namespace aoimac {

namespace {

// Uniform in (0, 1); avoids the implementation-defined layout of
// std::uniform_real_distribution so replays are engine-stable.
double uniform01(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

// X on {1,2,...} with P(X=x) = p^{x-1}(1-p), by inversion.
std::uint32_t geometric_count(double per, std::mt19937_64& rng) {
    if (per <= 0.0) return 1;
    const double x = 1.0 + std::floor(std::log(uniform01(rng)) / std::log(per));
    return static_cast<std::uint32_t>(std::min(x, 4.0e9));
}

struct SawtoothSums {
    double time = 0.0;    // sum of X_w * S
    double area1 = 0.0;   // integral of age
    double area2 = 0.0;   // integral of age^2
};

SawtoothSums accumulate(const RenewalBatch& batch) {
    const double t = batch.timing.packet_duration;
    const double s = batch.timing.renewal_scale;
    SawtoothSums sums;
    for (std::uint32_t x : batch.samples) {
        const double span = x * s;
        sums.time += span;
        sums.area1 += t * span + span * span / 2.0;
        const double peak = t + span;
        sums.area2 += (peak * peak * peak - t * t * t) / 3.0;
    }
    return sums;
}

}  // namespace

SchemeTiming scheme_timing(Scheme scheme, int users, int block_len, double bandwidth) {
    if (users < 1) throw std::invalid_argument("scheme_timing: users must be >= 1");
    if (block_len < 1) throw std::invalid_argument("scheme_timing: block_len must be >= 1");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("scheme_timing: bandwidth must be > 0");
    SchemeTiming timing;
    timing.scheme = scheme;
    if (scheme == Scheme::Tdma) {
        timing.packet_duration = block_len / bandwidth;
        timing.renewal_scale = users * timing.packet_duration;
    } else {
        timing.packet_duration = users * block_len / bandwidth;
        timing.renewal_scale = timing.packet_duration;
    }
    return timing;
}

RenewalBatch draw_renewals(double per, SchemeTiming timing, std::size_t count,
                           std::uint64_t seed) {
    if (per < 0.0 || per >= 1.0 || !std::isfinite(per))
        throw std::invalid_argument("draw_renewals: per must be in [0, 1)");
    if (count == 0) throw std::invalid_argument("draw_renewals: count must be >= 1");
    RenewalBatch batch;
    batch.timing = timing;
    batch.per = per;
    batch.samples.resize(count);
    std::mt19937_64 rng(seed);
    for (auto& x : batch.samples) x = geometric_count(per, rng);
    return batch;
}

std::pair<double, double> empirical_average_aoi(const RenewalBatch& batch) {
    if (batch.samples.empty()) throw std::invalid_argument("empirical_average_aoi: empty batch");
    const SawtoothSums sums = accumulate(batch);
    return {sums.area1 / sums.time, sums.area2 / sums.time};
}

double aoi_time_fraction(const RenewalBatch& batch, double threshold) {
    if (threshold < 0.0) throw std::invalid_argument("aoi_time_fraction: threshold must be >= 0");
    if (batch.samples.empty()) throw std::invalid_argument("aoi_time_fraction: empty batch");
    const double t = batch.timing.packet_duration;
    const double s = batch.timing.renewal_scale;
    const double a = std::max(threshold - t, 0.0);
    double covered = 0.0;
    double total = 0.0;
    for (std::uint32_t x : batch.samples) {
        const double span = x * s;
        covered += std::min(a, span);
        total += span;
    }
    return covered / total;
}

double empirical_bounded_aoi(const RenewalBatch& batch, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("empirical_bounded_aoi: gamma must be in (0, 1)");
    if (batch.samples.empty()) throw std::invalid_argument("empirical_bounded_aoi: empty batch");

    const double t = batch.timing.packet_duration;
    const double s = batch.timing.renewal_scale;

    // Sorted spans + prefix sums make each fraction query O(log W) inside
    // the bisection.
    std::vector<double> spans(batch.samples.size());
    std::transform(batch.samples.begin(), batch.samples.end(), spans.begin(),
                   [s](std::uint32_t x) { return x * s; });
    std::sort(spans.begin(), spans.end());
    std::vector<double> prefix(spans.size() + 1, 0.0);
    std::partial_sum(spans.begin(), spans.end(), prefix.begin() + 1);
    const double total = prefix.back();

    const auto fraction = [&](double d) {
        const double a = std::max(d - t, 0.0);
        const auto it = std::upper_bound(spans.begin(), spans.end(), a);
        const auto n_below = static_cast<std::size_t>(it - spans.begin());
        const double covered =
            prefix[n_below] + a * static_cast<double>(spans.size() - n_below);
        return covered / total;
    };

    double lo = t;
    double hi = t + spans.back();
    while (hi - lo > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (fraction(mid) >= gamma)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

AoiTraceSummary simulate_slot_level(const SystemConfig& cfg, Scheme scheme, int block_len,
                                    const PerModel& per_model, long horizon_rounds,
                                    std::uint64_t seed) {
    cfg.validate();
    if (horizon_rounds < 1)
        throw std::invalid_argument("simulate_slot_level: horizon_rounds must be >= 1");

    const SchemeTiming timing = scheme_timing(scheme, cfg.users, block_len, cfg.bandwidth);
    AoiTraceSummary summary;
    summary.users.resize(static_cast<std::size_t>(cfg.users));

    double mean_acc = 0.0;
    double second_acc = 0.0;
    int counted_users = 0;

    for (int j = 0; j < cfg.users; ++j) {
        const ChannelSnr ch = effective_snr(scheme, cfg.users, cfg.bandwidth, cfg.power_of(j));
        const double p =
            per_model.kind == PerModel::Kind::Ldpc ? 0.0 : packet_error_rate(per_model, cfg.source_bits, block_len, ch);

        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
        RenewalBatch batch;
        batch.timing = timing;
        batch.per = p;

        bool started = false;
        std::uint32_t count = 0;
        for (long round = 0; round < horizon_rounds; ++round) {
            bool success;
            if (per_model.kind == PerModel::Kind::Ldpc) {
                // One live packet through the coded pipeline.
                const std::uint64_t ev = derive_seed(seed, static_cast<std::uint64_t>(j),
                                                     static_cast<std::uint64_t>(round));
                const GeneratorGraph graph =
                    build_code(cfg.source_bits, block_len, splitmix64(ev));
                std::mt19937_64 pkt_rng(ev);
                std::bernoulli_distribution coin(0.5);
                std::vector<std::uint8_t> source(static_cast<std::size_t>(cfg.source_bits));
                for (auto& b : source) b = coin(pkt_rng);
                ReceivedBlock block = transmit(encode(graph, source), ch, pkt_rng);
                block.truth = source;
                success = bp_decode(graph, block, per_model.max_iter).success;
            } else {
                success = uniform01(rng) >= p;
            }
            if (!started) {
                started = success;  // statistics begin at the first success
                continue;
            }
            ++count;
            if (success) {
                batch.samples.push_back(count);
                count = 0;
            }
        }
        // The partial cycle at the horizon end is discarded.

        UserAoiSummary& user = summary.users[static_cast<std::size_t>(j)];
        user.per = p;
        user.cycles = batch.samples.size();
        if (!batch.samples.empty()) {
            const auto [mean, second] = empirical_average_aoi(batch);
            user.emp_mean = mean;
            user.emp_second_moment = second;
            user.emp_bounded = empirical_bounded_aoi(batch, cfg.gamma);
            const SawtoothSums sums = accumulate(batch);
            summary.total_time += sums.time;
            mean_acc += mean;
            second_acc += second;
            summary.emp_bounded = std::max(summary.emp_bounded, user.emp_bounded);
            ++counted_users;
        }
    }

    if (counted_users > 0) {
        summary.emp_mean = mean_acc / counted_users;
        summary.emp_second_moment = second_acc / counted_users;
    }
    return summary;
}

}  // namespace aoimac

#pragma once

#include <cstdint>

#include "aoimac/channel.hpp"

namespace aoimac {

/// How the per-packet error probability is obtained.
struct PerModel {
    enum class Kind { Fixed, Rcb, Ldpc };

    Kind kind = Kind::Rcb;
    double fixed_per = 0.0;  ///< used when kind == Fixed

    // Ldpc Monte-Carlo settings.
    int min_errors = 100;
    long max_trials = 1'000'000;
    int max_iter = 50;
    std::uint64_t seed = 0;

    static PerModel fixed(double p) {
        PerModel m;
        m.kind = Kind::Fixed;
        m.fixed_per = p;
        return m;
    }
    static PerModel rcb() { return PerModel{}; }
    static PerModel ldpc(std::uint64_t seed, int min_errors = 100, long max_trials = 1'000'000) {
        PerModel m;
        m.kind = Kind::Ldpc;
        m.seed = seed;
        m.min_errors = min_errors;
        m.max_trials = max_trials;
        return m;
    }
};

/// Evaluate the model at one (K, L, snr) point. Fixed ignores the channel.
double packet_error_rate(const PerModel& model, int source_bits, int block_len, ChannelSnr ch);

}  // namespace aoimac

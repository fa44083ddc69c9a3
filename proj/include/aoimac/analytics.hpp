#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "aoimac/channel.hpp"

namespace aoimac {

/// Thrown when a PER of 1 makes the age diverge.
struct DivergentAoi : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical parameters of one experiment point.
struct SystemConfig {
    int users = 1;
    double bandwidth = 1.0;       ///< normalized units
    std::vector<double> powers;   ///< one entry (symmetric) or one per user
    int source_bits = 100;
    double gamma = 0.99;          ///< bounded-AoI confidence

    void validate() const;
    /// Received power of user j (symmetric configs share entry 0).
    double power_of(int user) const;
};

/// First three moments of the geometric inter-success count X on {1,2,...}.
struct GeomMoments {
    double m1 = 1.0;
    double m2 = 1.0;
    double m3 = 1.0;
    double per = 0.0;
};

/// Closed-form AoI statistics for one (scheme, config, PER) triple.
struct AoiStats {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
    double bounded_upper = 0.0;  ///< Chebyshev upper bound on the bounded AoI
    Scheme scheme = Scheme::Tdma;
    int block_len = 0;
};

/// Moments of X ~ Geom(1-p) on {1,2,...}:
///   E[X]   = 1/(1-p)
///   E[X^2] = (1+p)/(1-p)^2
///   E[X^3] = (1+4p+p^2)/(1-p)^3
GeomMoments geom_moments(double per);

/// Average AoI, second moment, variance and Chebyshev bounded-AoI upper
/// bound for an N-user TDMA round-robin system with slot duration L/B.
AoiStats tdma_aoi(const SystemConfig& cfg, int block_len, double per);

/// Same for FDMA with per-user bandwidth B/N, packet duration N*L/B.
AoiStats fdma_aoi(const SystemConfig& cfg, int block_len, double per);

/// Network-level bound: every user must meet the threshold, so the network
/// bounded AoI is the max over users.
double network_bounded_upper(std::span<const AoiStats> per_user);

}  // namespace aoimac

#pragma once

#include <stdexcept>
#include <string>

namespace aoimac {

enum class Scheme { Tdma, Fdma };

inline const char* to_string(Scheme s) { return s == Scheme::Tdma ? "tdma" : "fdma"; }

/// Thrown when a quadrature or optimization routine fails to reach its
/// accuracy target.
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-channel-use SNR (linear power ratio, unit noise power).
struct ChannelSnr {
    double snr = 0.0;
};

/// Result of maximizing the random-coding exponent at a given rate.
struct ExponentResult {
    double e_g = 0.0;      ///< exponent in bits per channel use
    double rho_star = 0.0; ///< maximizing rho in [0, 1]
    double rate = 0.0;     ///< code rate R = K/L
};

struct PerEstimate {
    double per = 1.0;
    int block_len = 0;
    int source_bits = 0;
};

/// Per-channel-use SNR after the scheme's bandwidth allocation: a TDMA user
/// bursts over the full band (P/B), an FDMA user concentrates the same power
/// in a 1/N band (N*P/B).
ChannelSnr effective_snr(Scheme scheme, int users, double bandwidth, double power);

/// Gallager E0(rho) for a binary-input AWGN channel with BPSK amplitudes
/// +-sqrt(snr) and unit noise power, in bits. Computed by composite
/// Gauss-Legendre panels over the channel output; panel count is doubled
/// until two consecutive evaluations agree to 1e-10, otherwise
/// NumericFailure.
double e0(double rho, ChannelSnr ch);

/// max over rho in [0,1] of E0(rho) - rho*R, accurate to 1e-6 in the
/// exponent. Ties broken toward smaller rho.
ExponentResult error_exponent(double rate, ChannelSnr ch);

/// Point PER estimate p = min(1, 2^(-L*E_G(K/L))).
PerEstimate per_estimate(int source_bits, int block_len, ChannelSnr ch);

}  // namespace aoimac

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "aoimac/channel.hpp"

namespace aoimac {

/// Systematic random code: the first K transmitted bits are the source bits,
/// each of the remaining L-K parity bits is the XOR of 4 distinct randomly
/// chosen source bits.
struct GeneratorGraph {
    int source_bits = 0;
    int block_len = 0;
    /// parity_edges[m] lists the 4 source indices feeding parity bit K+m.
    std::vector<std::array<int, 4>> parity_edges;
};

/// Channel output for one packet.
struct ReceivedBlock {
    Eigen::VectorXd llrs;            ///< one LLR per transmitted bit, length L
    std::vector<std::uint8_t> truth; ///< transmitted source bits, for genie checking
};

struct PerMeasurement {
    double per_hat = 0.0;
    long trials = 0;
    long errors = 0;
    double ci95_halfwidth = 0.0;
};

struct DecodeResult {
    std::vector<std::uint8_t> decoded;
    bool success = false;
};

/// Draw a fresh random code; deterministic per seed. Requires K >= 4 and
/// L >= K (the systematic part must fit).
GeneratorGraph build_code(int source_bits, int block_len, std::uint64_t seed);

/// XOR encoding: [source | parities].
std::vector<std::uint8_t> encode(const GeneratorGraph& graph,
                                 const std::vector<std::uint8_t>& source);

/// BPSK over real AWGN with unit noise power: y = (1-2c)*sqrt(snr) + n,
/// llr = 2*sqrt(snr)*y. The truth field is left empty; pipelines that need
/// genie checking fill it in.
ReceivedBlock transmit(const std::vector<std::uint8_t>& codeword, ChannelSnr ch,
                       std::mt19937_64& rng);

/// Flooding sum-product decoding over the source bits. Systematic LLRs act
/// as intrinsic evidence; each parity bit contributes one degree-4 soft
/// check seeded with its own channel LLR. Messages clamped at +-30.
/// Success is genie-aided: decoded word compared against block.truth.
DecodeResult bp_decode(const GeneratorGraph& graph, const ReceivedBlock& block, int max_iter);

/// Monte-Carlo PER: fresh random graph and random source per packet (the
/// random-coding ensemble), stop at min_errors failures or max_trials.
/// Per-packet seed streams make the result independent of scheduling.
PerMeasurement estimate_per(int source_bits, int block_len, ChannelSnr ch, int min_errors,
                            long max_trials, std::uint64_t seed, int max_iter = 50);

}  // namespace aoimac

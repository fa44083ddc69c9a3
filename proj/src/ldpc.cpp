#include "aoimac/ldpc.hpp"

#include <algorithm>
#include <cmath>

#include "aoimac/seed.hpp"

namespace aoimac {

namespace {

constexpr double kMsgClamp = 30.0;

double clamp_msg(double x) { return std::clamp(x, -kMsgClamp, kMsgClamp); }

// 2*atanh(x) with saturation at the clamp instead of infinity.
double atanh2(double x) {
    if (x >= 1.0) return kMsgClamp;
    if (x <= -1.0) return -kMsgClamp;
    return clamp_msg(std::log((1.0 + x) / (1.0 - x)));
}

}  // namespace

GeneratorGraph build_code(int source_bits, int block_len, std::uint64_t seed) {
    if (source_bits < 4) throw std::invalid_argument("build_code: source_bits must be >= 4");
    if (block_len < source_bits)
        throw std::invalid_argument("build_code: block_len must be >= source_bits");
    GeneratorGraph g;
    g.source_bits = source_bits;
    g.block_len = block_len;
    g.parity_edges.resize(static_cast<std::size_t>(block_len - source_bits));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, source_bits - 1);
    for (auto& edge : g.parity_edges) {
        int filled = 0;
        while (filled < 4) {
            const int idx = pick(rng);
            bool dup = false;
            for (int j = 0; j < filled; ++j) dup = dup || edge[static_cast<std::size_t>(j)] == idx;
            if (!dup) edge[static_cast<std::size_t>(filled++)] = idx;
        }
    }
    return g;
}

std::vector<std::uint8_t> encode(const GeneratorGraph& graph,
                                 const std::vector<std::uint8_t>& source) {
    if (static_cast<int>(source.size()) != graph.source_bits)
        throw std::invalid_argument("encode: source length mismatch");
    std::vector<std::uint8_t> codeword(static_cast<std::size_t>(graph.block_len));
    std::copy(source.begin(), source.end(), codeword.begin());
    for (std::size_t m = 0; m < graph.parity_edges.size(); ++m) {
        const auto& e = graph.parity_edges[m];
        codeword[static_cast<std::size_t>(graph.source_bits) + m] =
            source[static_cast<std::size_t>(e[0])] ^ source[static_cast<std::size_t>(e[1])] ^
            source[static_cast<std::size_t>(e[2])] ^ source[static_cast<std::size_t>(e[3])];
    }
    return codeword;
}

ReceivedBlock transmit(const std::vector<std::uint8_t>& codeword, ChannelSnr ch,
                       std::mt19937_64& rng) {
    if (ch.snr < 0.0 || !std::isfinite(ch.snr))
        throw std::invalid_argument("transmit: snr must be finite and >= 0");
    const double amp = std::sqrt(ch.snr);
    std::normal_distribution<double> noise(0.0, 1.0);
    ReceivedBlock block;
    block.llrs.resize(static_cast<Eigen::Index>(codeword.size()));
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const double y = (codeword[i] ? -amp : amp) + noise(rng);
        block.llrs[static_cast<Eigen::Index>(i)] = 2.0 * amp * y;
    }
    return block;
}

DecodeResult bp_decode(const GeneratorGraph& graph, const ReceivedBlock& block, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("bp_decode: max_iter must be >= 1");
    if (block.llrs.size() != graph.block_len)
        throw std::invalid_argument("bp_decode: llr length mismatch");

    const int k = graph.source_bits;
    const std::size_t checks = graph.parity_edges.size();

    // Messages live on the 4 edges of each check.
    std::vector<std::array<double, 4>> var_to_check(checks);
    std::vector<std::array<double, 4>> check_to_var(checks, {0.0, 0.0, 0.0, 0.0});
    for (std::size_t m = 0; m < checks; ++m)
        for (int e = 0; e < 4; ++e)
            var_to_check[m][static_cast<std::size_t>(e)] =
                clamp_msg(block.llrs[graph.parity_edges[m][static_cast<std::size_t>(e)]]);

    std::vector<double> posterior(static_cast<std::size_t>(k));
    for (int iter = 0; iter < max_iter; ++iter) {
        // Check update: the parity bit's own LLR joins the tanh product.
        for (std::size_t m = 0; m < checks; ++m) {
            const double t_parity = std::tanh(clamp_msg(block.llrs[k + static_cast<int>(m)]) / 2.0);
            std::array<double, 4> t{};
            for (int e = 0; e < 4; ++e)
                t[static_cast<std::size_t>(e)] =
                    std::tanh(var_to_check[m][static_cast<std::size_t>(e)] / 2.0);
            for (int e = 0; e < 4; ++e) {
                double prod = t_parity;
                for (int o = 0; o < 4; ++o)
                    if (o != e) prod *= t[static_cast<std::size_t>(o)];
                check_to_var[m][static_cast<std::size_t>(e)] = atanh2(prod);
            }
        }

        // Variable update from the systematic LLR plus extrinsic sums.
        for (int i = 0; i < k; ++i)
            posterior[static_cast<std::size_t>(i)] = clamp_msg(block.llrs[i]);
        for (std::size_t m = 0; m < checks; ++m)
            for (int e = 0; e < 4; ++e)
                posterior[static_cast<std::size_t>(graph.parity_edges[m][static_cast<std::size_t>(e)])] +=
                    check_to_var[m][static_cast<std::size_t>(e)];

        double max_change = 0.0;
        for (std::size_t m = 0; m < checks; ++m) {
            for (int e = 0; e < 4; ++e) {
                const int i = graph.parity_edges[m][static_cast<std::size_t>(e)];
                const double msg = clamp_msg(posterior[static_cast<std::size_t>(i)] -
                                             check_to_var[m][static_cast<std::size_t>(e)]);
                max_change = std::max(max_change,
                                      std::abs(msg - var_to_check[m][static_cast<std::size_t>(e)]));
                var_to_check[m][static_cast<std::size_t>(e)] = msg;
            }
        }
        if (max_change < 1e-9) break;
    }

    DecodeResult result;
    result.decoded.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        result.decoded[static_cast<std::size_t>(i)] = posterior[static_cast<std::size_t>(i)] < 0.0;
    result.success = !block.truth.empty() && result.decoded == block.truth;
    return result;
}

PerMeasurement estimate_per(int source_bits, int block_len, ChannelSnr ch, int min_errors,
                            long max_trials, std::uint64_t seed, int max_iter) {
    if (min_errors < 1) throw std::invalid_argument("estimate_per: min_errors must be >= 1");
    if (max_trials < 1) throw std::invalid_argument("estimate_per: max_trials must be >= 1");

    PerMeasurement m;
    std::vector<std::uint8_t> source(static_cast<std::size_t>(source_bits));
    while (m.trials < max_trials && m.errors < min_errors) {
        const std::uint64_t packet = static_cast<std::uint64_t>(m.trials);
        const GeneratorGraph graph =
            build_code(source_bits, block_len, derive_seed(seed, packet, 0));
        std::mt19937_64 rng(derive_seed(seed, packet, 1));
        std::bernoulli_distribution coin(0.5);
        for (auto& b : source) b = coin(rng);
        ReceivedBlock block = transmit(encode(graph, source), ch, rng);
        block.truth = source;
        if (!bp_decode(graph, block, max_iter).success) ++m.errors;
        ++m.trials;
    }
    m.per_hat = static_cast<double>(m.errors) / static_cast<double>(m.trials);
    m.ci95_halfwidth =
        1.96 * std::sqrt(m.per_hat * (1.0 - m.per_hat) / static_cast<double>(m.trials));
    return m;
}

}  // namespace aoimac

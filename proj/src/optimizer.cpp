#include "aoimac/optimizer.hpp"

#include <cmath>

namespace aoimac {

void SweepSpec::validate(int source_bits) const {
    if (l_min < source_bits) throw std::invalid_argument("SweepSpec: l_min must be >= source_bits");
    if (l_step < 1) throw std::invalid_argument("SweepSpec: l_step must be >= 1");
    if (l_min > l_max) throw std::invalid_argument("SweepSpec: l_min must be <= l_max");
    if (powers_db.empty()) throw std::invalid_argument("SweepSpec: powers_db must be nonempty");
}

double PerCache::get(const PerModel& model, int source_bits, int block_len, ChannelSnr ch) {
    const Key key{source_bits, block_len, std::llround(ch.snr * 1e6), static_cast<int>(model.kind),
                  model.kind == PerModel::Kind::Ldpc ? model.seed : 0};
    auto it = cache_.find(key);
    if (it == cache_.end())
        it = cache_.emplace(key, packet_error_rate(model, source_bits, block_len, ch)).first;
    return it->second;
}

std::vector<OptimumPoint> optimize_blocklength(const SystemConfig& cfg, const SweepSpec& spec,
                                               Scheme scheme, PerCache* cache) {
    cfg.validate();
    spec.validate(cfg.source_bits);

    PerCache local;
    PerCache& per_cache = cache ? *cache : local;

    std::vector<OptimumPoint> points;
    points.reserve(spec.powers_db.size());
    for (double power_db : spec.powers_db) {
        const ChannelSnr ch =
            effective_snr(scheme, cfg.users, cfg.bandwidth, db_to_linear(power_db));
        OptimumPoint best;
        best.power_db = power_db;
        best.scheme = scheme;
        bool have = false;
        for (int l = spec.l_min; l <= spec.l_max; l += spec.l_step) {
            const double per = per_cache.get(spec.per_model, cfg.source_bits, l, ch);
            if (per >= 1.0) continue;  // divergent age, never the optimum
            const AoiStats stats =
                scheme == Scheme::Tdma ? tdma_aoi(cfg, l, per) : fdma_aoi(cfg, l, per);
            const double value =
                spec.metric == Metric::Average ? stats.mean : stats.bounded_upper;
            if (!have || value < best.best_value) {
                best.best_l = l;
                best.best_value = value;
                best.per_at_best = per;
                have = true;
            }
        }
        if (!have)
            throw DivergentAoi("optimize_blocklength: PER is 1 over the whole grid at " +
                               std::to_string(power_db) + " dB");
        points.push_back(best);
    }
    return points;
}

}  // namespace aoimac

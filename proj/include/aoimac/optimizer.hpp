#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "aoimac/analytics.hpp"
#include "aoimac/per_model.hpp"

namespace aoimac {

enum class Metric { Average, Bounded };

/// Block-length search domain and objective.
struct SweepSpec {
    int l_min = 100;
    int l_max = 400;
    int l_step = 10;
    Metric metric = Metric::Average;
    PerModel per_model;
    std::vector<double> powers_db;

    void validate(int source_bits) const;
};

struct OptimumPoint {
    double power_db = 0.0;
    Scheme scheme = Scheme::Tdma;
    int best_l = 0;
    double best_value = 0.0;  ///< minimized AoI metric
    double per_at_best = 0.0;
};

/// Memoizes PER evaluations across grid points; LDPC entries are also keyed
/// by the model's seed.
class PerCache {
  public:
    double get(const PerModel& model, int source_bits, int block_len, ChannelSnr ch);

  private:
    using Key = std::tuple<int, int, long long, int, std::uint64_t>;
    std::map<Key, double> cache_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Exhaustive search over the L grid for each power; ties broken toward
/// smaller L.
std::vector<OptimumPoint> optimize_blocklength(const SystemConfig& cfg, const SweepSpec& spec,
                                               Scheme scheme, PerCache* cache = nullptr);

}  // namespace aoimac

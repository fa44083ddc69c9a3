#include "aoimac/analytics.hpp"

#include <cmath>

namespace aoimac {

void SystemConfig::validate() const {
    if (users < 1) throw std::invalid_argument("SystemConfig: users must be >= 1");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("SystemConfig: bandwidth must be > 0");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("SystemConfig: gamma must be in (0, 1)");
    if (source_bits < 1) throw std::invalid_argument("SystemConfig: source_bits must be >= 1");
    if (powers.empty()) throw std::invalid_argument("SystemConfig: at least one power required");
    if (powers.size() != 1 && static_cast<int>(powers.size()) != users)
        throw std::invalid_argument("SystemConfig: powers must have 1 or N entries");
    for (double p : powers)
        if (p < 0.0 || !std::isfinite(p))
            throw std::invalid_argument("SystemConfig: powers must be finite and >= 0");
}

double SystemConfig::power_of(int user) const {
    if (user < 0 || user >= users) throw std::invalid_argument("SystemConfig: bad user index");
    return powers.size() == 1 ? powers[0] : powers[static_cast<std::size_t>(user)];
}

GeomMoments geom_moments(double per) {
    if (per < 0.0 || per >= 1.0 || !std::isfinite(per))
        throw std::invalid_argument("geom_moments: per must be in [0, 1)");
    const double q = 1.0 - per;
    GeomMoments m;
    m.per = per;
    m.m1 = 1.0 / q;
    m.m2 = (1.0 + per) / (q * q);
    m.m3 = (1.0 + 4.0 * per + per * per) / (q * q * q);
    return m;
}

namespace {

// Shared tail: variance and Chebyshev bound from mean and second moment.
AoiStats finish_stats(double mean, double second_moment, double gamma, Scheme scheme,
                      int block_len) {
    AoiStats s;
    s.mean = mean;
    s.second_moment = second_moment;
    s.variance = second_moment - mean * mean;
    s.bounded_upper = std::sqrt(s.variance / (1.0 - gamma)) + mean;
    s.scheme = scheme;
    s.block_len = block_len;
    return s;
}

}  // namespace

AoiStats tdma_aoi(const SystemConfig& cfg, int block_len, double per) {
    cfg.validate();
    if (block_len < 1) throw std::invalid_argument("tdma_aoi: block_len must be >= 1");
    if (per >= 1.0) throw DivergentAoi("tdma_aoi: per = 1 gives unbounded age");
    const GeomMoments m = geom_moments(per);
    const double n = cfg.users;
    const double t = block_len / cfg.bandwidth;  // slot duration
    const double mean = (1.0 + n / (1.0 - per) - n / 2.0) * t;
    const double second = (n * n * m.m3 / (3.0 * m.m1) + n * m.m2 / m.m1 + 1.0) * t * t;
    return finish_stats(mean, second, cfg.gamma, Scheme::Tdma, block_len);
}

AoiStats fdma_aoi(const SystemConfig& cfg, int block_len, double per) {
    cfg.validate();
    if (block_len < 1) throw std::invalid_argument("fdma_aoi: block_len must be >= 1");
    if (per >= 1.0) throw DivergentAoi("fdma_aoi: per = 1 gives unbounded age");
    const GeomMoments m = geom_moments(per);
    const double t = cfg.users * block_len / cfg.bandwidth;  // packet duration
    const double mean = (0.5 + 1.0 / (1.0 - per)) * t;
    const double second = (m.m3 / (3.0 * m.m1) + m.m2 / m.m1 + 1.0) * t * t;
    return finish_stats(mean, second, cfg.gamma, Scheme::Fdma, block_len);
}

double network_bounded_upper(std::span<const AoiStats> per_user) {
    if (per_user.empty()) throw std::invalid_argument("network_bounded_upper: empty list");
    double best = per_user[0].bounded_upper;
    for (const AoiStats& s : per_user) best = std::max(best, s.bounded_upper);
    return best;
}

}  // namespace aoimac

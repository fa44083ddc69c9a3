#include "aoimac/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace aoimac {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// log of the symmetric E0 integrand [0.5*(p0(y)^a + p1(y)^a)]^{1+rho};
// bounded by 1, so the integral itself is safe in plain doubles.
double log_integrand(double y, double mu, double a, double rho) {
    constexpr double log_norm = -0.9189385332046727;  // -log(sqrt(2*pi))
    const double lp0 = log_norm - 0.5 * (y - mu) * (y - mu);
    const double lp1 = log_norm - 0.5 * (y + mu) * (y + mu);
    const double hi = std::max(a * lp0, a * lp1);
    const double lo = std::min(a * lp0, a * lp1);
    return (1.0 + rho) * (hi + std::log1p(std::exp(lo - hi)) - M_LN2);
}

double integrate_panels(double lo, double hi, int panels, double mu, double a, double rho) {
    const double width = (hi - lo) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double center = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        double acc = 0.0;
        for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
            acc += kGlWeights[k] * (std::exp(log_integrand(center + half * kGlNodes[k], mu, a, rho)) +
                                    std::exp(log_integrand(center - half * kGlNodes[k], mu, a, rho)));
        }
        sum += half * acc;
    }
    return sum;
}

}  // namespace

ChannelSnr effective_snr(Scheme scheme, int users, double bandwidth, double power) {
    if (users < 1) throw std::invalid_argument("effective_snr: users must be >= 1");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("effective_snr: bandwidth must be > 0");
    if (power < 0.0 || !std::isfinite(power))
        throw std::invalid_argument("effective_snr: power must be finite and >= 0");
    const double snr = scheme == Scheme::Tdma ? power / bandwidth : users * power / bandwidth;
    return ChannelSnr{snr};
}

double e0(double rho, ChannelSnr ch) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("e0: rho must be in [0, 1]");
    if (ch.snr < 0.0 || !std::isfinite(ch.snr))
        throw std::invalid_argument("e0: snr must be finite and >= 0");
    if (rho == 0.0 || ch.snr == 0.0) return 0.0;

    const double mu = std::sqrt(ch.snr);
    const double a = 1.0 / (1.0 + rho);

    // The integrand has Gaussian peaks of width O(1) at +-mu; for large mu
    // the valley between them is negligible and symmetry halves the work.
    double lo, hi, factor;
    if (mu <= 30.0) {
        lo = -mu - 15.0;
        hi = mu + 15.0;
        factor = 1.0;
    } else {
        lo = mu - 15.0;
        hi = mu + 15.0;
        factor = 2.0;
    }

    int panels = std::max(32, static_cast<int>(std::ceil(hi - lo)));
    double prev = -std::log2(factor * integrate_panels(lo, hi, panels, mu, a, rho));
    for (int refine = 0; refine < 6; ++refine) {
        panels *= 2;
        const double cur = -std::log2(factor * integrate_panels(lo, hi, panels, mu, a, rho));
        if (std::abs(cur - prev) < 1e-10) return cur;
        prev = cur;
    }
    throw NumericFailure("e0: quadrature did not converge at snr=" + std::to_string(ch.snr));
}

ExponentResult error_exponent(double rate, ChannelSnr ch) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("error_exponent: rate must be in (0, 1]");

    const auto objective = [&](double rho) { return e0(rho, ch) - rho * rate; };

    // Coarse grid, then golden-section refinement around the best cell. The
    // objective is concave in rho, so the bracket around the grid argmax
    // contains the true maximizer.
    constexpr int kGridPoints = 256;
    int best_idx = 0;
    double best_val = objective(0.0);
    for (int i = 1; i < kGridPoints; ++i) {
        const double rho = static_cast<double>(i) / (kGridPoints - 1);
        const double v = objective(rho);
        if (v > best_val) {
            best_val = v;
            best_idx = i;
        }
    }

    double lo = std::max(0.0, (best_idx - 1) / static_cast<double>(kGridPoints - 1));
    double hi = std::min(1.0, (best_idx + 1) / static_cast<double>(kGridPoints - 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-8) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    double rho_star = 0.5 * (lo + hi);
    double e_g = objective(rho_star);
    if (best_val > e_g) {
        e_g = best_val;
        rho_star = best_idx / static_cast<double>(kGridPoints - 1);
    }
    // Tie toward smaller rho when the exponent is flat at zero.
    if (e_g <= 0.0 || objective(0.0) >= e_g - 1e-12) {
        e_g = std::max(0.0, e_g);
        if (objective(0.0) >= e_g - 1e-12) rho_star = 0.0;
    }
    return ExponentResult{std::max(0.0, e_g), rho_star, rate};
}

PerEstimate per_estimate(int source_bits, int block_len, ChannelSnr ch) {
    if (source_bits < 1) throw std::invalid_argument("per_estimate: source_bits must be >= 1");
    if (source_bits > block_len)
        throw std::invalid_argument("per_estimate: source_bits must not exceed block_len");
    const double rate = static_cast<double>(source_bits) / block_len;
    const ExponentResult ex = error_exponent(rate, ch);
    const double per = std::min(1.0, std::exp2(-static_cast<double>(block_len) * ex.e_g));
    return PerEstimate{per, block_len, source_bits};
}

}  // namespace aoimac

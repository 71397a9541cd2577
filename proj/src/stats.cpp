#include "alphaeta/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aeta::stats {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLogSqrt2Pi = 0.9189385332046727;  // ln sqrt(2*pi)
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_tail(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double log_normal_tail(double x) {
    if (x <= 30.0) {
        return std::log(normal_tail(x));
    }
    // Asymptotic series Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 ...),
    // relative truncation error < 1e-12 for x > 30.
    const double x2 = x * x;
    double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2)
                    + 105.0 / (x2 * x2 * x2 * x2);
    return -0.5 * x2 - std::log(x) - kLogSqrt2Pi + std::log(series);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    // Newton polish; pdf(x) is safely nonzero for |x| <= 40
    for (int i = 0; i < 4; ++i) {
        double pdf = std::exp(-0.5 * x * x - kLogSqrt2Pi);
        if (pdf <= 0.0) break;
        x -= (normal_cdf(x) - p) / pdf;
    }
    return x;
}

double logsumexp(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("logsumexp: empty input");
    double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

Binomial binomial_estimate(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("binomial_estimate: zero trials");
    Binomial b;
    b.trials = trials;
    b.errors = errors;
    b.p = static_cast<double>(errors) / static_cast<double>(trials);
    const double half = 1.959963984540054 * std::sqrt(b.p * (1.0 - b.p) / static_cast<double>(trials));
    b.ci_low = std::max(0.0, b.p - half);
    b.ci_high = std::min(1.0, b.p + half);
    return b;
}

}  // namespace aeta::stats

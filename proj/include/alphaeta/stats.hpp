#pragma once

#include <cstdint>
#include <span>

namespace aeta::stats {

double normal_cdf(double x);

/// Upper tail Q(x) = P(N(0,1) > x).
double normal_tail(double x);

/// ln Q(x), stable for arguments far beyond erfc underflow (x up to ~1e7).
double log_normal_tail(double x);

/// Inverse of normal_cdf on (0,1). Bisection plus Newton polish.
double normal_quantile(double p);

double logsumexp(std::span<const double> v);

struct Binomial {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double p = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// 95% normal-approximation interval. Intended for trials >= 1000; below
/// that the interval is still produced but is only indicative.
Binomial binomial_estimate(std::uint64_t errors, std::uint64_t trials);

}  // namespace aeta::stats

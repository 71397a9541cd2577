#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "alphaeta/constellation.hpp"

namespace aeta {

// Normative quadrature conventions, owned by this header alone:
//   heterodyne outcome density (1/pi) * exp(-|y - alpha e^{i theta}|^2),
//   i.e. each quadrature is Gaussian with variance 1/2;
//   homodyne outcome mean alpha*cos(theta - lo), variance 1/4.
inline constexpr double kHeterodyneQuadVariance = 0.5;
inline constexpr double kHomodyneVariance = 0.25;

/// One heterodyne outcome, a point in the complex plane. Homodyne outcomes
/// are plain doubles (one quadrature only).
struct QuadratureSample {
    double y1 = 0.0;
    double y2 = 0.0;
};

inline QuadratureSample heterodyne_sample(double theta, const SystemParams& p,
                                          std::mt19937_64& eng) {
    std::normal_distribution<double> n01;
    const double s = std::sqrt(kHeterodyneQuadVariance);
    return QuadratureSample{p.alpha * std::cos(theta) + s * n01(eng),
                            p.alpha * std::sin(theta) + s * n01(eng)};
}

inline double homodyne_sample(double theta, double lo_angle, const SystemParams& p,
                              std::mt19937_64& eng) {
    std::normal_distribution<double> n01;
    return p.alpha * std::cos(theta - lo_angle) + std::sqrt(kHomodyneVariance) * n01(eng);
}

inline double phase_estimate(const QuadratureSample& s) {
    if (s.y1 == 0.0 && s.y2 == 0.0)
        throw std::invalid_argument("phase_estimate: zero vector has no phase");
    return wrap_angle(std::atan2(s.y2, s.y1));
}

/// <alpha e^{i theta1} | alpha e^{i theta2}> = exp(-S + S e^{i(theta2-theta1)}).
inline std::complex<double> coherent_overlap(double theta1, double theta2,
                                             const SystemParams& p) {
    const double d = theta2 - theta1;
    return std::exp(std::complex<double>(p.S * (std::cos(d) - 1.0), p.S * std::sin(d)));
}

/// Minimum error probability for discriminating the two equiprobable
/// antipodal states of one basis: 1/2 (1 - sqrt(1 - e^{-4S})).
inline double helstrom_binary_error(const SystemParams& p) {
    return 0.5 * (1.0 - std::sqrt(-std::expm1(-4.0 * p.S)));
}

/// Wrap-around distance between two angles, in [0, pi].
inline double angular_distance(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return d <= std::numbers::pi ? d : kTwoPi - d;
}

}  // namespace aeta

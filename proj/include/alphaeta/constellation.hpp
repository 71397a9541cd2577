#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "alphaeta/bits.hpp"

namespace aeta {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Constellation and signal parameters. M bases (an antipodal state pair
/// each) give a 2M-point grid with spacing pi/M; S is the signal energy in
/// mean photon number and alpha = sqrt(S) the field amplitude.
///
/// M must be even so that basis parity matches grid-point parity; only the
/// keystream chunking additionally needs M to be a power of two.
struct SystemParams {
    std::uint32_t M = 0;
    std::uint32_t m = 0;  // log2(M) when M is a power of two, else 0
    double S = 0.0;
    double alpha = 0.0;

    static SystemParams make(std::uint32_t M, double S) {
        if (M < 2 || (M % 2) != 0)
            throw std::invalid_argument("SystemParams: M must be even and >= 2");
        if (!(S >= 0.0) || !std::isfinite(S))
            throw std::invalid_argument("SystemParams: S must be finite and >= 0");
        SystemParams p;
        p.M = M;
        p.m = std::has_single_bit(M) ? static_cast<std::uint32_t>(std::countr_zero(M)) : 0;
        p.S = S;
        p.alpha = std::sqrt(S);
        return p;
    }

    double grid_step() const { return std::numbers::pi / static_cast<double>(M); }
};

/// Basis parity: 0 for even keystream symbols, 1 for odd.
inline Bit pol(Symbol z) { return static_cast<Bit>(z & 1u); }

/// A transmitted grid point, as exact integer index l in [0, 2M) and as the
/// angle l*pi/M. All exact logic works on the index; the angle exists only
/// for the measurement boundary.
struct MapPoint {
    std::uint32_t index = 0;
    double radians = 0.0;
};

inline double index_to_angle(std::uint32_t l, const SystemParams& p) {
    return wrap_angle(static_cast<double>(l) * p.grid_step());
}

/// theta(x, z) = [z/M + (x xor pol(z))] * pi, i.e. index l = z + M*(x xor pol(z)).
inline MapPoint map_angle(Bit x, Symbol z, const SystemParams& p) {
    if (z >= p.M) throw std::invalid_argument("map_angle: keystream symbol out of range");
    if (x > 1) throw std::invalid_argument("map_angle: data bit must be 0 or 1");
    const std::uint32_t l = z + p.M * static_cast<std::uint32_t>(x ^ pol(z));
    return MapPoint{l, index_to_angle(l, p)};
}

/// Inverse of map_angle on basis z; the index must lie on that basis.
inline Bit demap_bit(Symbol z, std::uint32_t index, const SystemParams& p) {
    if (z >= p.M) throw std::invalid_argument("demap_bit: keystream symbol out of range");
    if (index >= 2 * p.M) throw std::invalid_argument("demap_bit: index out of range");
    if (index % p.M != z) throw std::invalid_argument("demap_bit: index not on basis z");
    return static_cast<Bit>((index / p.M) ^ pol(z));
}

/// The unique data bit represented at grid point l: floor(l/M) xor (l mod 2).
/// Adjacent points carry opposite bits except at the two seams l = M-1 and
/// l = 2M-1.
inline Bit bit_at_index(std::uint32_t l, const SystemParams& p) {
    if (l >= 2 * p.M) throw std::invalid_argument("bit_at_index: index out of range");
    return static_cast<Bit>((l / p.M) ^ (l & 1u));
}

}  // namespace aeta

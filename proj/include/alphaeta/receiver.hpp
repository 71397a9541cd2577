#pragma once

#include <cstdint>
#include <vector>

#include "alphaeta/constellation.hpp"
#include "alphaeta/exec.hpp"
#include "alphaeta/keystream.hpp"
#include "alphaeta/measurement.hpp"
#include "alphaeta/stats.hpp"

namespace aeta {

/// One transmitted frame: the state angle of every slot. Angles sit on the
/// 2M grid until deliberate randomization moves them off it.
struct CipherFrame {
    std::vector<double> angles;

    std::size_t size() const { return angles.size(); }
};

/// Encodes a plaintext with a deterministic (LFSR-kind) expander:
/// angle_i = map_angle(X_i, Z_i).
CipherFrame encrypt(const BitSeq& plaintext, const SeedKey& seed, const ExpanderConfig& cfg,
                    const SystemParams& params);

/// Keyed binary decision from a homodyne outcome taken along the basis axis
/// lo = z*pi/M. Positive outcomes decide pol(z), negative 1 xor pol(z); an
/// exact zero decides pol(z).
Bit bob_decide(Symbol z, double sample, const SystemParams& params);

/// Error probability of that receiver: Q(2 sqrt(S)).
double bob_ber_analytic(const SystemParams& params);

using BerEstimate = stats::Binomial;

enum class PlaintextMode { random, zeros };

/// Monte Carlo bit error rate of the full encrypt/transmit/decide loop over
/// random seeds and noise; `trials` counts slots. Reproducible: every block
/// of slots draws from a stream derived from (master_seed, "bob-ber", block).
BerEstimate roundtrip_ber(const SystemParams& params, const ExpanderConfig& cfg,
                          std::uint64_t trials, std::uint64_t master_seed,
                          ExecMode mode = ExecMode::openmp,
                          PlaintextMode plaintext = PlaintextMode::random);

}  // namespace aeta

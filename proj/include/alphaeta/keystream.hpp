#pragma once

#include <cstdint>
#include <vector>

#include "alphaeta/bits.hpp"

namespace aeta {

/// The shared secret: register cells s_0 ... s_{|K|-1}. All-zero is legal
/// (and expands to the all-zero keystream).
struct SeedKey {
    BitSeq bits;

    static SeedKey from_bits(BitSeq b);
    /// Cell j = bit j of `value`, so the integer 1 sets s_0.
    static SeedKey from_uint(std::uint64_t value, std::size_t length);

    std::size_t size() const { return bits.size(); }
};

/// Register layout of the key expander.
///
/// Normative convention used everywhere in this project:
///   * output bit t is cell 0 before the t-th shift,
///   * the feedback bit is the XOR of the tapped cells,
///   * the register shifts toward index 0 (cell j <- cell j+1), and the
///     feedback enters the top cell.
struct LfsrSpec {
    std::uint32_t length = 0;
    std::vector<std::uint32_t> taps;  // sorted, unique, each < length

    static LfsrSpec make(std::uint32_t length, std::vector<std::uint32_t> taps);

    /// Bit j set iff j is a tap. Requires length <= 64.
    std::uint64_t tap_mask() const;
};

/// Reference expander; works for any register length.
BitSeq lfsr_expand(const SeedKey& seed, const LfsrSpec& spec, std::size_t nbits);

/// Word-packed register for lengths <= 64; the hot path of every attack
/// kernel. Equivalent to lfsr_expand bit for bit (tests enforce this).
class Lfsr64 {
public:
    Lfsr64(std::uint64_t seed, const LfsrSpec& spec);

    Bit step() {
        const Bit out = static_cast<Bit>(state_ & 1u);
        const std::uint64_t fb = static_cast<std::uint64_t>(__builtin_parityll(state_ & taps_));
        state_ = (state_ >> 1) | (fb << (length_ - 1));
        return out;
    }

    Symbol next_symbol(std::uint32_t bits_per_symbol) {
        Symbol z = 0;
        for (std::uint32_t j = 0; j < bits_per_symbol; ++j) z = (z << 1) | step();
        return z;
    }

private:
    std::uint64_t state_;
    std::uint64_t taps_;
    std::uint32_t length_;
};

/// m = log2(M). Throws unless M is a power of two >= 2.
std::uint32_t bits_per_symbol(std::uint32_t M);

/// Symbol i is built from bits (i-1)m ... im-1 with the first bit as the
/// most significant. The bit count must be an exact multiple of m.
std::vector<Symbol> chunk_symbols(const BitSeq& bits, std::uint32_t M);

/// Countermeasure hook breaking GF(2) linearity. The masking term is a bent
/// function of six window bits, so every affine approximation of an output
/// bit has bias 1/16:
///   out_t = in_t ^ (in_{t+1} & in_{t+2}) ^ (in_{t+3} & in_{t+4})
///                ^ (in_{t+5} & in_{t+6}),
/// consuming overlapping 7-bit windows; output length = input length - 6.
BitSeq nonlinear_filter(const BitSeq& bits);

/// Affine GF(2) function of the seed, seed packed as in SeedKey::from_uint.
struct Gf2LinearForm {
    std::uint64_t mask = 0;
    Bit constant = 0;
    std::uint32_t length = 0;

    Bit eval(std::uint64_t seed) const {
        return static_cast<Bit>(__builtin_parityll(mask & seed) ^ constant);
    }
    Bit eval(const SeedKey& seed) const;
};

/// Coefficient mask of every expander output bit t < nbits, by symbolic
/// state propagation. Pure LFSR only (constant term is always zero).
std::vector<std::uint64_t> linear_form_masks(const LfsrSpec& spec, std::size_t nbits);

/// The m affine forms giving the bits of Z_i (slot index i >= 1, MSB first):
/// evaluating form j on any seed equals bit j of the i-th chunked symbol.
std::vector<Gf2LinearForm> symbol_linear_forms(const LfsrSpec& spec, std::size_t slot_index,
                                               std::uint32_t M);

/// Key-expansion configuration shared by the encoder and the attack
/// harnesses. `uniform` models an ideal expander: fresh uniform symbols
/// known to both ends, usable for any even M (no chunking involved).
struct ExpanderConfig {
    enum class Kind { lfsr, uniform };
    Kind kind = Kind::lfsr;
    LfsrSpec spec;
    bool nonlinear = false;  // route LFSR output through nonlinear_filter

    static ExpanderConfig lfsr_config(LfsrSpec spec, bool nonlinear = false);
    static ExpanderConfig uniform_config();
};

/// Keystream of `nslots` symbols for an LFSR-kind expander.
std::vector<Symbol> keystream_symbols(const SeedKey& seed, const ExpanderConfig& cfg,
                                      std::size_t nslots, std::uint32_t M);
std::vector<Symbol> keystream_symbols(std::uint64_t seed, const ExpanderConfig& cfg,
                                      std::size_t nslots, std::uint32_t M);

}  // namespace aeta

#include "alphaeta/keystream.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace aeta {

SeedKey SeedKey::from_bits(BitSeq b) {
    if (b.size() < 2) throw std::invalid_argument("SeedKey: length must be >= 2");
    for (Bit v : b)
        if (v > 1) throw std::invalid_argument("SeedKey: bits must be 0 or 1");
    return SeedKey{std::move(b)};
}

SeedKey SeedKey::from_uint(std::uint64_t value, std::size_t length) {
    return from_bits(bits_from_uint(value, length));
}

LfsrSpec LfsrSpec::make(std::uint32_t length, std::vector<std::uint32_t> taps) {
    if (length < 2) throw std::invalid_argument("LfsrSpec: length must be >= 2");
    if (taps.empty()) throw std::invalid_argument("LfsrSpec: taps must be nonempty");
    std::sort(taps.begin(), taps.end());
    taps.erase(std::unique(taps.begin(), taps.end()), taps.end());
    if (taps.back() >= length) throw std::invalid_argument("LfsrSpec: tap index out of range");
    return LfsrSpec{length, std::move(taps)};
}

std::uint64_t LfsrSpec::tap_mask() const {
    if (length > 64) throw std::invalid_argument("tap_mask: register longer than 64");
    std::uint64_t m = 0;
    for (std::uint32_t t : taps) m |= (1ull << t);
    return m;
}

BitSeq lfsr_expand(const SeedKey& seed, const LfsrSpec& spec, std::size_t nbits) {
    if (seed.size() != spec.length)
        throw std::invalid_argument("lfsr_expand: seed length does not match register length");
    BitSeq reg = seed.bits;
    BitSeq out;
    out.reserve(nbits);
    const std::size_t L = reg.size();
    for (std::size_t t = 0; t < nbits; ++t) {
        out.push_back(reg[0]);
        Bit fb = 0;
        for (std::uint32_t tap : spec.taps) fb ^= reg[tap];
        for (std::size_t j = 0; j + 1 < L; ++j) reg[j] = reg[j + 1];
        reg[L - 1] = fb;
    }
    return out;
}

Lfsr64::Lfsr64(std::uint64_t seed, const LfsrSpec& spec)
    : state_(seed), taps_(spec.tap_mask()), length_(spec.length) {
    if (spec.length > 64) throw std::invalid_argument("Lfsr64: register longer than 64");
    if (spec.length < 64 && (seed >> spec.length) != 0)
        throw std::invalid_argument("Lfsr64: seed wider than register");
}

std::uint32_t bits_per_symbol(std::uint32_t M) {
    if (M < 2 || !std::has_single_bit(M))
        throw std::invalid_argument("keystream chunking requires M to be a power of two >= 2");
    return static_cast<std::uint32_t>(std::countr_zero(M));
}

std::vector<Symbol> chunk_symbols(const BitSeq& bits, std::uint32_t M) {
    const std::uint32_t m = bits_per_symbol(M);
    if (bits.size() % m != 0)
        throw std::invalid_argument("chunk_symbols: bit count not divisible by log2(M)");
    std::vector<Symbol> out;
    out.reserve(bits.size() / m);
    for (std::size_t i = 0; i < bits.size(); i += m) {
        Symbol z = 0;
        for (std::uint32_t j = 0; j < m; ++j) z = (z << 1) | bits[i + j];
        out.push_back(z);
    }
    return out;
}

BitSeq nonlinear_filter(const BitSeq& bits) {
    if (bits.size() < 7) throw std::invalid_argument("nonlinear_filter: need at least 7 bits");
    BitSeq out(bits.size() - 6);
    for (std::size_t t = 0; t + 6 < bits.size(); ++t)
        out[t] = bits[t] ^ (bits[t + 1] & bits[t + 2]) ^ (bits[t + 3] & bits[t + 4]) ^
                 (bits[t + 5] & bits[t + 6]);
    return out;
}

Bit Gf2LinearForm::eval(const SeedKey& seed) const {
    if (seed.size() != length) throw std::invalid_argument("Gf2LinearForm: seed length mismatch");
    return eval(bits_to_uint(seed.bits));
}

std::vector<std::uint64_t> linear_form_masks(const LfsrSpec& spec, std::size_t nbits) {
    if (spec.length > 64) throw std::invalid_argument("linear_form_masks: register longer than 64");
    const std::size_t L = spec.length;
    // cells[j] = coefficient mask of register cell j as a function of the seed
    std::vector<std::uint64_t> cells(L);
    for (std::size_t j = 0; j < L; ++j) cells[j] = 1ull << j;
    std::vector<std::uint64_t> out;
    out.reserve(nbits);
    for (std::size_t t = 0; t < nbits; ++t) {
        out.push_back(cells[0]);
        std::uint64_t fb = 0;
        for (std::uint32_t tap : spec.taps) fb ^= cells[tap];
        for (std::size_t j = 0; j + 1 < L; ++j) cells[j] = cells[j + 1];
        cells[L - 1] = fb;
    }
    return out;
}

std::vector<Gf2LinearForm> symbol_linear_forms(const LfsrSpec& spec, std::size_t slot_index,
                                               std::uint32_t M) {
    if (slot_index < 1) throw std::invalid_argument("symbol_linear_forms: slot index starts at 1");
    const std::uint32_t m = bits_per_symbol(M);
    const auto masks = linear_form_masks(spec, slot_index * m);
    std::vector<Gf2LinearForm> forms(m);
    for (std::uint32_t j = 0; j < m; ++j)
        forms[j] = Gf2LinearForm{masks[(slot_index - 1) * m + j], 0, spec.length};
    return forms;
}

ExpanderConfig ExpanderConfig::lfsr_config(LfsrSpec spec, bool nonlinear) {
    ExpanderConfig cfg;
    cfg.kind = Kind::lfsr;
    cfg.spec = std::move(spec);
    cfg.nonlinear = nonlinear;
    return cfg;
}

ExpanderConfig ExpanderConfig::uniform_config() {
    ExpanderConfig cfg;
    cfg.kind = Kind::uniform;
    return cfg;
}

std::vector<Symbol> keystream_symbols(const SeedKey& seed, const ExpanderConfig& cfg,
                                      std::size_t nslots, std::uint32_t M) {
    if (cfg.kind != ExpanderConfig::Kind::lfsr)
        throw std::invalid_argument("keystream_symbols: expander has no deterministic keystream");
    const std::uint32_t m = bits_per_symbol(M);
    const std::size_t nbits = nslots * m + (cfg.nonlinear ? 6 : 0);
    BitSeq raw = lfsr_expand(seed, cfg.spec, nbits);
    if (cfg.nonlinear) raw = nonlinear_filter(raw);
    return chunk_symbols(raw, M);
}

std::vector<Symbol> keystream_symbols(std::uint64_t seed, const ExpanderConfig& cfg,
                                      std::size_t nslots, std::uint32_t M) {
    if (cfg.kind != ExpanderConfig::Kind::lfsr)
        throw std::invalid_argument("keystream_symbols: expander has no deterministic keystream");
    const std::uint32_t m = bits_per_symbol(M);
    std::vector<Symbol> out;
    out.reserve(nslots);
    Lfsr64 reg(seed, cfg.spec);
    if (!cfg.nonlinear) {
        for (std::size_t i = 0; i < nslots; ++i) out.push_back(reg.next_symbol(m));
        return out;
    }
    // keep a 7-bit lookahead window for the filter
    Bit w[7];
    for (Bit& b : w) b = reg.step();
    for (std::size_t i = 0; i < nslots; ++i) {
        Symbol z = 0;
        for (std::uint32_t j = 0; j < m; ++j) {
            const Bit f = w[0] ^ (w[1] & w[2]) ^ (w[3] & w[4]) ^ (w[5] & w[6]);
            z = (z << 1) | static_cast<Symbol>(f);
            for (int k = 0; k < 6; ++k) w[k] = w[k + 1];
            w[6] = reg.step();
        }
        out.push_back(z);
    }
    return out;
}

}  // namespace aeta

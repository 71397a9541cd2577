#include <doctest.h>

#include <random>
#include <set>

#include "alphaeta/keystream.hpp"

using namespace aeta;

namespace {

// primitive tap sets for the shift-down convention (x^L = sum x^j over taps)
const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> kPrimitive = {
    {3, {0, 1}},   // x^3 + x + 1
    {4, {0, 1}},   // x^4 + x + 1
    {5, {0, 2}},   // x^5 + x^2 + 1
};

std::uint64_t cycle_length(std::uint64_t seed, const LfsrSpec& spec) {
    const auto step_state = [&](std::uint64_t s) {
        const std::uint64_t fb = static_cast<std::uint64_t>(__builtin_parityll(s & spec.tap_mask()));
        return (s >> 1) | (fb << (spec.length - 1));
    };
    std::uint64_t s = step_state(seed);
    std::uint64_t n = 1;
    while (s != seed) {
        s = step_state(s);
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("all-zero seed is a fixed point") {
    const auto spec = LfsrSpec::make(4, {0, 1});
    const auto out = lfsr_expand(SeedKey::from_uint(0, 4), spec, 8);
    CHECK(bits_to_string(out) == "00000000");
}

TEST_CASE("seed 1 with taps {0,1} produces the hand-simulated sequence") {
    const auto spec = LfsrSpec::make(4, {0, 1});
    const auto seed = SeedKey::from_uint(1, 4);  // s_0 = 1
    const auto out = lfsr_expand(seed, spec, 15);
    CHECK(out[0] == 1);  // first output is s_0
    CHECK(bits_to_string(out) == "100010011010111");
    // sequence repeats with period 15
    const auto longer = lfsr_expand(seed, spec, 30);
    CHECK(bits_to_string(longer) == "100010011010111" "100010011010111");
}

TEST_CASE("primitive registers cycle through all nonzero states") {
    for (const auto& [L, taps] : kPrimitive) {
        const auto spec = LfsrSpec::make(L, taps);
        const std::uint64_t want = (1ull << L) - 1;
        for (std::uint64_t seed = 1; seed <= want; ++seed)
            REQUIRE(cycle_length(seed, spec) == want);
    }
}

TEST_CASE("expansion is GF(2)-linear in the seed") {
    const auto spec = LfsrSpec::make(16, {0, 4, 13, 15});
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t a = eng() & 0xFFFF, b = eng() & 0xFFFF;
        const auto ea = lfsr_expand(SeedKey::from_uint(a, 16), spec, 64);
        const auto eb = lfsr_expand(SeedKey::from_uint(b, 16), spec, 64);
        const auto eab = lfsr_expand(SeedKey::from_uint(a ^ b, 16), spec, 64);
        CHECK(eab == xor_bits(ea, eb));
    }
}

TEST_CASE("fast register matches the reference expander") {
    std::mt19937_64 eng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t L = 2 + static_cast<std::uint32_t>(eng() % 30);
        std::vector<std::uint32_t> taps;
        for (std::uint32_t j = 0; j < L; ++j)
            if (eng() & 1) taps.push_back(j);
        if (taps.empty()) taps.push_back(0);
        const auto spec = LfsrSpec::make(L, taps);
        const std::uint64_t seed = eng() & ((1ull << L) - 1);
        const auto ref = lfsr_expand(SeedKey::from_uint(seed, L), spec, 96);
        Lfsr64 fast(seed, spec);
        for (std::size_t t = 0; t < ref.size(); ++t) REQUIRE(fast.step() == ref[t]);
    }
}

TEST_CASE("chunking packs the first bit as the most significant") {
    CHECK(chunk_symbols(bits_from_string("0110"), 4) == std::vector<Symbol>{1, 2});
    CHECK(chunk_symbols(bits_from_string("111"), 8) == std::vector<Symbol>{7});
    CHECK_THROWS_AS((void)chunk_symbols(bits_from_string("10100"), 4), std::invalid_argument);
    CHECK_THROWS_AS((void)chunk_symbols(bits_from_string("10"), 6), std::invalid_argument);
    CHECK_THROWS_AS((void)chunk_symbols(bits_from_string("10"), 1), std::invalid_argument);
}

TEST_CASE("nonlinear filter masks with three window products") {
    CHECK(bits_to_string(nonlinear_filter(bits_from_string("000000000"))) == "000");
    CHECK(bits_to_string(nonlinear_filter(bits_from_string("111111111"))) == "000");
    // 10110010: out_0 = 1^(0&1)^(1&0)^(0&1) = 1, out_1 = 0^(1&1)^(0&0)^(1&0) = 1
    CHECK(bits_to_string(nonlinear_filter(bits_from_string("10110010"))) == "11");
    CHECK_THROWS_AS((void)nonlinear_filter(bits_from_string("101100")), std::invalid_argument);
}

TEST_CASE("filter output breaks seed linearity") {
    const auto spec = LfsrSpec::make(16, {0, 4, 13, 15});
    std::mt19937_64 eng(23);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t a = eng() & 0xFFFF, b = eng() & 0xFFFF;
        const auto fa = nonlinear_filter(lfsr_expand(SeedKey::from_uint(a, 16), spec, 70));
        const auto fb = nonlinear_filter(lfsr_expand(SeedKey::from_uint(b, 16), spec, 70));
        const auto fab = nonlinear_filter(lfsr_expand(SeedKey::from_uint(a ^ b, 16), spec, 70));
        if (fab != xor_bits(fa, fb)) ++mismatches;
    }
    CHECK(mismatches > 0);
}

TEST_CASE("linear forms: slot 1 reads the leading cells") {
    const auto spec = LfsrSpec::make(8, {0, 3});
    const auto forms = symbol_linear_forms(spec, 1, 16);
    REQUIRE(forms.size() == 4);
    for (std::uint32_t j = 0; j < 4; ++j) {
        CHECK(forms[j].mask == (1ull << j));
        CHECK(forms[j].constant == 0);
    }
    for (const auto& f : forms) CHECK(f.eval(std::uint64_t{0}) == 0);
}

TEST_CASE("linear forms reproduce expansion for every seed, L = 10") {
    const auto spec = LfsrSpec::make(10, {0, 3});
    const std::uint32_t M = 4;
    const std::size_t nslots = 6;
    const auto cfg = ExpanderConfig::lfsr_config(spec);
    std::vector<std::vector<Gf2LinearForm>> forms;
    for (std::size_t i = 1; i <= nslots; ++i) forms.push_back(symbol_linear_forms(spec, i, M));
    for (std::uint64_t seed = 0; seed < (1ull << 10); ++seed) {
        const auto symbols = keystream_symbols(seed, cfg, nslots, M);
        for (std::size_t i = 0; i < nslots; ++i) {
            Symbol z = 0;
            for (const auto& f : forms[i]) z = (z << 1) | f.eval(seed);
            REQUIRE(z == symbols[i]);
        }
    }
}

TEST_CASE("linear forms, spot check against brute-force expansion") {
    const auto spec = LfsrSpec::make(4, {0, 1});
    const auto forms = symbol_linear_forms(spec, 3, 4);
    std::mt19937_64 eng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t seed = eng() & 0xF;
        const auto bits = lfsr_expand(SeedKey::from_uint(seed, 4), spec, 6);
        const auto symbols = chunk_symbols(bits, 4);
        Symbol z = 0;
        for (const auto& f : forms) z = (z << 1) | f.eval(seed);
        REQUIRE(z == symbols[2]);
    }
}

TEST_CASE("keystream symbols with the filter enabled consume six extra bits") {
    const auto spec = LfsrSpec::make(8, {0, 3, 5});
    const auto seed = SeedKey::from_uint(0x5B, 8);
    const auto cfg = ExpanderConfig::lfsr_config(spec, true);
    const auto symbols = keystream_symbols(seed, cfg, 5, 4);
    REQUIRE(symbols.size() == 5);
    const auto raw = lfsr_expand(seed, spec, 5 * 2 + 6);
    const auto expect = chunk_symbols(nonlinear_filter(raw), 4);
    CHECK(symbols == expect);
    // fast path agrees
    CHECK(keystream_symbols(std::uint64_t{0x5B}, cfg, 5, 4) == expect);
}

TEST_CASE("seed and spec validation") {
    CHECK_THROWS_AS((void)SeedKey::from_uint(0, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)LfsrSpec::make(4, {}), std::invalid_argument);
    CHECK_THROWS_AS((void)LfsrSpec::make(4, {4}), std::invalid_argument);
    const auto spec = LfsrSpec::make(4, {0, 1});
    CHECK_THROWS_AS((void)lfsr_expand(SeedKey::from_uint(1, 5), spec, 4), std::invalid_argument);
}

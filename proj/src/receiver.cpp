#include "alphaeta/receiver.hpp"

#include <random>

#include "alphaeta/rng.hpp"
#include "parallel.hpp"

namespace aeta {

namespace {
constexpr std::uint64_t kBerBlock = 4096;

std::uint64_t seed_mask(std::uint32_t length) {
    return length >= 64 ? ~0ull : (1ull << length) - 1;
}
}  // namespace

CipherFrame encrypt(const BitSeq& plaintext, const SeedKey& seed, const ExpanderConfig& cfg,
                    const SystemParams& params) {
    const auto symbols = keystream_symbols(seed, cfg, plaintext.size(), params.M);
    CipherFrame frame;
    frame.angles.reserve(plaintext.size());
    for (std::size_t i = 0; i < plaintext.size(); ++i)
        frame.angles.push_back(map_angle(plaintext[i], symbols[i], params).radians);
    return frame;
}

Bit bob_decide(Symbol z, double sample, const SystemParams&) {
    if (sample > 0.0) return pol(z);
    if (sample < 0.0) return static_cast<Bit>(1u ^ pol(z));
    return pol(z);  // tie-break contract, measure zero
}

double bob_ber_analytic(const SystemParams& params) {
    return stats::normal_tail(2.0 * params.alpha);
}

BerEstimate roundtrip_ber(const SystemParams& params, const ExpanderConfig& cfg,
                          std::uint64_t trials, std::uint64_t master_seed, ExecMode mode,
                          PlaintextMode plaintext) {
    if (trials == 0) throw std::invalid_argument("roundtrip_ber: need at least one trial");
    const bool lfsr = cfg.kind == ExpanderConfig::Kind::lfsr;
    if (lfsr) bits_per_symbol(params.M);  // reject non-power-of-two M up front

    const std::uint64_t nblocks = detail::block_count(trials, kBerBlock);
    std::vector<std::uint64_t> errors(nblocks, 0);

    detail::for_each_block(nblocks, mode, [&](std::uint64_t b) {
        auto eng = rng::make_stream(master_seed, "bob-ber", b);
        std::uniform_int_distribution<Symbol> uz(0, params.M - 1);
        const std::uint64_t lo = b * kBerBlock;
        const std::uint64_t hi = std::min(trials, lo + kBerBlock);
        const std::uint64_t n_slots = hi - lo;

        std::vector<Symbol> zs;
        if (lfsr) {
            const std::uint64_t seed = eng() & seed_mask(cfg.spec.length);
            zs = keystream_symbols(seed, cfg, n_slots, params.M);
        }
        std::uint64_t err = 0;
        for (std::uint64_t i = 0; i < n_slots; ++i) {
            const Symbol z = lfsr ? zs[i] : uz(eng);
            const Bit x = plaintext == PlaintextMode::zeros ? 0
                                                            : static_cast<Bit>(eng() & 1u);
            const double theta = map_angle(x, z, params).radians;
            const double lo_angle = static_cast<double>(z) * params.grid_step();
            const double sample = homodyne_sample(theta, lo_angle, params, eng);
            if (bob_decide(z, sample, params) != x) ++err;
        }
        errors[b] = err;
    });

    std::uint64_t total = 0;
    for (std::uint64_t e : errors) total += e;
    return stats::binomial_estimate(total, trials);
}

}  // namespace aeta

#include "alphaeta/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alphaeta/errors.hpp"
#include "alphaeta/rng.hpp"
#include "parallel.hpp"

namespace aeta {

namespace {

constexpr std::uint64_t kGammaBlock = 1024;
constexpr std::uint64_t kEveBlock = 1024;
constexpr std::uint64_t kSeedChunk = 1ull << 16;

std::uint64_t seed_mask(std::uint32_t length) {
    return length >= 64 ? ~0ull : (1ull << length) - 1;
}

// Visits every symbol whose same-bit grid point lies inside the wedge,
// scanning only the index window the wedge covers. A window shorter than
// the full circle meets each symbol's bit-x point at most once, so no
// deduplication is needed.
template <class Fn>
void scan_wedge(double phi_hat, Bit known_x, const SystemParams& p, double width, Fn&& fn) {
    const double wh = 0.5 * width;
    if (wh >= std::numbers::pi) {
        for (Symbol z = 0; z < p.M; ++z) fn(z);
        return;
    }
    const double step = p.grid_step();
    long lo = static_cast<long>(std::floor((phi_hat - wh) / step)) - 1;
    long hi = static_cast<long>(std::ceil((phi_hat + wh) / step)) + 1;
    const long grid = 2 * static_cast<long>(p.M);
    if (hi - lo + 1 >= grid) {
        // window wraps past the full circle; visit each position once
        lo = 0;
        hi = grid - 1;
    }
    for (long l = lo; l <= hi; ++l) {
        long lm = l % grid;
        if (lm < 0) lm += grid;
        const std::uint32_t lu = static_cast<std::uint32_t>(lm);
        if (bit_at_index(lu, p) != known_x) continue;
        if (angular_distance(index_to_angle(lu, p), phi_hat) <= wh)
            fn(static_cast<Symbol>(lu % p.M));
    }
}

std::uint64_t wedge_count(double phi_hat, Bit known_x, const SystemParams& p, double width) {
    std::uint64_t count = 0;
    scan_wedge(phi_hat, known_x, p, width, [&](Symbol) { ++count; });
    return count;
}

struct SlotMask {
    std::vector<std::uint64_t> words;

    explicit SlotMask(std::uint32_t M) : words((M + 63) / 64, 0) {}
    void set(Symbol z) { words[z >> 6] |= 1ull << (z & 63); }
    bool test(Symbol z) const { return (words[z >> 6] >> (z & 63)) & 1u; }
};

struct SeedRangeResult {
    std::uint64_t surviving = 0;
    std::uint64_t slots_checked = 0;
    std::vector<std::uint64_t> survivors;
};

SeedRangeResult scan_seed_range(std::uint64_t first, std::uint64_t last, const LfsrSpec& spec,
                                std::uint32_t m, const std::vector<SlotMask>& masks,
                                std::size_t store_cap) {
    SeedRangeResult r;
    const std::size_t n = masks.size();
    for (std::uint64_t seed = first; seed < last; ++seed) {
        Lfsr64 reg(seed, spec);
        bool alive = true;
        for (std::size_t i = 0; i < n; ++i) {
            ++r.slots_checked;
            if (!masks[i].test(reg.next_symbol(m))) {
                alive = false;
                break;
            }
        }
        if (alive) {
            ++r.surviving;
            if (r.survivors.size() < store_cap) r.survivors.push_back(seed);
        }
    }
    return r;
}

}  // namespace

double gamma_analytic(const SystemParams& params) {
    if (!(params.S > 0.0)) throw std::invalid_argument("gamma_analytic: S must be positive");
    return static_cast<double>(params.M) / (std::numbers::pi * params.alpha);
}

WidthPolicy WidthPolicy::confidence_level(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("WidthPolicy: confidence must be in (0,1)");
    return WidthPolicy{Kind::confidence, p};
}

double WidthPolicy::width(const SystemParams& params) const {
    if (!(params.S > 0.0)) throw std::invalid_argument("WidthPolicy: S must be positive");
    switch (kind) {
        case Kind::standard:
            return 2.0 / params.alpha;
        case Kind::confidence: {
            const double z = stats::normal_quantile(0.5 * (1.0 + confidence));
            return 2.0 * z / std::sqrt(2.0 * params.S);
        }
    }
    throw std::logic_error("WidthPolicy: unknown kind");
}

std::string WidthPolicy::name() const {
    if (kind == Kind::standard) return "standard";
    std::ostringstream os;
    os << "confidence(" << confidence << ")";
    return os.str();
}

WedgeSet wedge_candidates(const QuadratureSample& sample, Bit known_x, const SystemParams& params,
                          double width, std::size_t slot) {
    if (!(width > 0.0)) throw std::invalid_argument("wedge_candidates: width must be positive");
    const double phi_hat = phase_estimate(sample);
    WedgeSet w;
    w.slot = slot;
    w.width = width;
    scan_wedge(phi_hat, known_x, params, width, [&](Symbol z) { w.candidates.push_back(z); });
    std::sort(w.candidates.begin(), w.candidates.end());
    return w;
}

GammaEstimate gamma_empirical(const SystemParams& params, const WidthPolicy& policy,
                              std::uint64_t trials, std::uint64_t master_seed, ExecMode mode,
                              double dsr_delta) {
    if (trials == 0) throw std::invalid_argument("gamma_empirical: need at least one trial");
    const double width = policy.width(params);
    const std::uint64_t nblocks = detail::block_count(trials, kGammaBlock);
    std::vector<std::uint64_t> sums(nblocks, 0), sqsums(nblocks, 0);

    detail::for_each_block(nblocks, mode, [&](std::uint64_t b) {
        auto eng = rng::make_stream(master_seed, "gamma", b);
        std::uniform_int_distribution<Symbol> uz(0, params.M - 1);
        std::uniform_real_distribution<double> dither(-0.5 * dsr_delta, 0.5 * dsr_delta);
        const std::uint64_t lo = b * kGammaBlock;
        const std::uint64_t hi = std::min(trials, lo + kGammaBlock);
        std::uint64_t sum = 0, sq = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Symbol z = uz(eng);
            const Bit x = static_cast<Bit>(eng() & 1u);
            double theta = map_angle(x, z, params).radians;
            if (dsr_delta > 0.0) theta = wrap_angle(theta + dither(eng));
            const auto y = heterodyne_sample(theta, params, eng);
            const std::uint64_t c = wedge_count(phase_estimate(y), x, params, width);
            sum += c;
            sq += c * c;
        }
        sums[b] = sum;
        sqsums[b] = sq;
    });

    std::uint64_t sum = 0, sq = 0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        sum += sums[b];
        sq += sqsums[b];
    }
    GammaEstimate g;
    g.trials = trials;
    g.mean = static_cast<double>(sum) / static_cast<double>(trials);
    const double ex2 = static_cast<double>(sq) / static_cast<double>(trials);
    g.stddev = std::sqrt(std::max(0.0, ex2 - g.mean * g.mean));
    return g;
}

std::string AttackReport::to_json() const {
    nlohmann::json j;
    j["attack"] = attack;
    j["parameters"] = parameters;
    j["surviving"] = surviving;
    j["survivors"] = survivors;
    j["success"] = success;
    j["work"] = work;
    j["error_rates"] = error_rates;
    j["notes"] = notes;
    return j.dump(2);
}

KnownPlaintextObservation simulate_known_plaintext(const SystemParams& params,
                                                   const ExpanderConfig& cfg,
                                                   std::uint64_t true_seed, std::size_t n_slots,
                                                   std::mt19937_64& eng, double dsr_delta) {
    KnownPlaintextObservation obs;
    obs.true_seed = true_seed;
    obs.plaintext.resize(n_slots);
    for (auto& b : obs.plaintext) b = static_cast<Bit>(eng() & 1u);
    if (cfg.kind == ExpanderConfig::Kind::lfsr) {
        obs.true_symbols = keystream_symbols(true_seed, cfg, n_slots, params.M);
    } else {
        std::uniform_int_distribution<Symbol> uz(0, params.M - 1);
        obs.true_symbols.resize(n_slots);
        for (auto& z : obs.true_symbols) z = uz(eng);
    }
    std::uniform_real_distribution<double> dither(-0.5 * dsr_delta, 0.5 * dsr_delta);
    obs.samples.reserve(n_slots);
    for (std::size_t i = 0; i < n_slots; ++i) {
        double theta = map_angle(obs.plaintext[i], obs.true_symbols[i], params).radians;
        if (dsr_delta > 0.0) theta = wrap_angle(theta + dither(eng));
        obs.samples.push_back(heterodyne_sample(theta, params, eng));
    }
    return obs;
}

std::vector<WedgeSet> wedges_from_observation(const KnownPlaintextObservation& obs,
                                              const SystemParams& params,
                                              const WidthPolicy& policy) {
    const double width = policy.width(params);
    std::vector<WedgeSet> wedges;
    wedges.reserve(obs.samples.size());
    for (std::size_t i = 0; i < obs.samples.size(); ++i)
        wedges.push_back(wedge_candidates(obs.samples[i], obs.plaintext[i], params, width, i));
    return wedges;
}

AttackReport assisted_bruteforce(const std::vector<WedgeSet>& wedges, const LfsrSpec& spec,
                                 const SystemParams& params, const BruteforceOptions& opts,
                                 ExecMode mode) {
    if (wedges.empty()) throw std::invalid_argument("assisted_bruteforce: no wedges");
    if (spec.length >= 48)
        throw std::invalid_argument("assisted_bruteforce: 2^|K| seed space is not enumerable");
    if (spec.length > opts.guard_bits && !opts.force)
        throw GuardError("assisted_bruteforce: |K| = " + std::to_string(spec.length) +
                         " exceeds the guard of " + std::to_string(opts.guard_bits) +
                         " bits; pass force to override");
    const std::uint32_t m = bits_per_symbol(params.M);

    std::vector<SlotMask> masks;
    masks.reserve(wedges.size());
    for (const auto& w : wedges) {
        SlotMask mask(params.M);
        for (Symbol z : w.candidates) {
            if (z >= params.M) throw std::invalid_argument("assisted_bruteforce: candidate >= M");
            mask.set(z);
        }
        masks.push_back(std::move(mask));
    }

    const std::uint64_t space = 1ull << spec.length;
    AttackReport rep;
    rep.attack = "assisted-bruteforce";
    rep.work = space;
    rep.parameters["key_bits"] = std::to_string(spec.length);
    rep.parameters["M"] = std::to_string(params.M);
    rep.parameters["S"] = std::to_string(params.S);
    rep.parameters["n_slots"] = std::to_string(wedges.size());

    std::uint64_t slots_checked = 0;
    if (mode == ExecMode::serial) {
        // reference path: one pass over the whole seed space
        auto r = scan_seed_range(0, space, spec, m, masks, opts.max_survivors_stored);
        rep.surviving = r.surviving;
        rep.survivors = std::move(r.survivors);
        slots_checked = r.slots_checked;
    } else {
        const std::uint64_t nchunks = detail::block_count(space, kSeedChunk);
        std::vector<SeedRangeResult> parts(nchunks);
        detail::for_each_block(nchunks, mode, [&](std::uint64_t c) {
            const std::uint64_t first = c * kSeedChunk;
            const std::uint64_t last = std::min(space, first + kSeedChunk);
            parts[c] = scan_seed_range(first, last, spec, m, masks, opts.max_survivors_stored);
        });
        for (auto& part : parts) {
            rep.surviving += part.surviving;
            slots_checked += part.slots_checked;
            for (std::uint64_t s : part.survivors)
                if (rep.survivors.size() < opts.max_survivors_stored) rep.survivors.push_back(s);
        }
    }
    rep.error_rates["mean_slots_checked"] =
        static_cast<double>(slots_checked) / static_cast<double>(space);

    if (opts.true_seed) {
        Lfsr64 reg(*opts.true_seed, spec);
        bool alive = true;
        for (const auto& mask : masks)
            if (!mask.test(reg.next_symbol(m))) {
                alive = false;
                break;
            }
        rep.success = alive;
    }

    if (rep.surviving > 0 && rep.surviving <= rep.survivors.size()) {
        std::set<std::vector<Symbol>> classes;
        for (std::uint64_t s : rep.survivors)
            classes.insert(keystream_symbols(s, ExpanderConfig::lfsr_config(spec), wedges.size(),
                                             params.M));
        std::ostringstream os;
        os << "survivors span " << classes.size() << " distinct keystream prefixes";
        rep.notes = os.str();
    }
    return rep;
}

Complexity complexity_estimate(double gamma, std::uint64_t key_bits, const SystemParams& params) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("complexity_estimate: gamma must be finite and >= 0");
    Complexity c;
    c.clamped = gamma < 1.0;
    c.gamma_used = c.clamped ? 1.0 : gamma;
    const double exponent = static_cast<double>(key_bits) / std::log2(static_cast<double>(params.M));
    c.log10_c = exponent * std::log10(c.gamma_used);
    c.c = std::pow(c.gamma_used, exponent);
    return c;
}

Bit eve_ciphertext_only_bit(const QuadratureSample& sample, const SystemParams& params,
                            EveRule rule) {
    const double phi_hat = phase_estimate(sample);
    if (rule == EveRule::nearest_index) {
        const auto l = static_cast<std::uint32_t>(
            std::llround(phi_hat / params.grid_step()) % (2ll * params.M));
        return bit_at_index(l, params);
    }
    // full mixture likelihood over the unknown keystream symbol
    const double c = 2.0 * params.alpha;
    double umax = -std::numeric_limits<double>::infinity();
    std::vector<double> u(2 * params.M);
    for (std::uint32_t l = 0; l < 2 * params.M; ++l) {
        const double th = static_cast<double>(l) * params.grid_step();
        u[l] = c * (sample.y1 * std::cos(th) + sample.y2 * std::sin(th));
        umax = std::max(umax, u[l]);
    }
    double score[2] = {0.0, 0.0};
    for (std::uint32_t l = 0; l < 2 * params.M; ++l) {
        const double d = u[l] - umax;
        if (d > -45.0) score[bit_at_index(l, params)] += std::exp(d);
    }
    return score[1] > score[0] ? 1 : 0;
}

stats::Binomial eve_co_error(const SystemParams& params, EveRule rule, std::uint64_t trials,
                             std::uint64_t master_seed, ExecMode mode) {
    if (trials == 0) throw std::invalid_argument("eve_co_error: need at least one trial");
    const std::uint32_t grid = 2 * params.M;
    std::vector<double> ct(grid), st(grid);
    std::vector<Bit> bit(grid);
    for (std::uint32_t l = 0; l < grid; ++l) {
        const double th = static_cast<double>(l) * params.grid_step();
        ct[l] = std::cos(th);
        st[l] = std::sin(th);
        bit[l] = bit_at_index(l, params);
    }

    const std::uint64_t nblocks = detail::block_count(trials, kEveBlock);
    std::vector<std::uint64_t> errors(nblocks, 0);
    detail::for_each_block(nblocks, mode, [&](std::uint64_t b) {
        auto eng = rng::make_stream(master_seed, "eve-co", b);
        std::uniform_int_distribution<Symbol> uz(0, params.M - 1);
        const std::uint64_t lo = b * kEveBlock;
        const std::uint64_t hi = std::min(trials, lo + kEveBlock);
        const double c = 2.0 * params.alpha;
        std::uint64_t err = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Symbol z = uz(eng);
            const Bit x = static_cast<Bit>(eng() & 1u);
            const auto y = heterodyne_sample(map_angle(x, z, params).radians, params, eng);
            Bit guess;
            if (rule == EveRule::nearest_index) {
                guess = eve_ciphertext_only_bit(y, params, rule);
            } else {
                double umax = -std::numeric_limits<double>::infinity();
                for (std::uint32_t l = 0; l < grid; ++l)
                    umax = std::max(umax, c * (y.y1 * ct[l] + y.y2 * st[l]));
                double score[2] = {0.0, 0.0};
                for (std::uint32_t l = 0; l < grid; ++l) {
                    const double d = c * (y.y1 * ct[l] + y.y2 * st[l]) - umax;
                    if (d > -45.0) score[bit[l]] += std::exp(d);
                }
                guess = score[1] > score[0] ? 1 : 0;
            }
            if (guess != x) ++err;
        }
        errors[b] = err;
    });

    std::uint64_t total = 0;
    for (std::uint64_t e : errors) total += e;
    return stats::binomial_estimate(total, trials);
}

namespace {

struct Ranked {
    std::uint32_t score;
    std::uint64_t seed;
};

bool ranked_before(const Ranked& a, const Ranked& b) {
    return a.score != b.score ? a.score > b.score : a.seed < b.seed;
}

// Keeps the best `cap` entries of a chunk, same ordering as the global rank.
void push_ranked(std::vector<Ranked>& top, std::size_t cap, Ranked r) {
    auto it = std::lower_bound(top.begin(), top.end(), r, ranked_before);
    if (top.size() < cap) {
        top.insert(it, r);
    } else if (it != top.end()) {
        top.insert(it, r);
        top.pop_back();
    }
}

}  // namespace

AttackReport correlation_attack(const KnownPlaintextObservation& obs, const LfsrSpec& model,
                                const SystemParams& params, const CorrelationOptions& opts,
                                ExecMode mode) {
    if (model.length >= 48)
        throw std::invalid_argument("correlation_attack: 2^|K| seed space is not enumerable");
    if (model.length > opts.guard_bits && !opts.force)
        throw GuardError("correlation_attack: |K| = " + std::to_string(model.length) +
                         " exceeds the guard of " + std::to_string(opts.guard_bits) +
                         " bits; pass force to override");
    const std::uint32_t m = bits_per_symbol(params.M);
    const std::uint32_t t = opts.msb_count;
    if (t < 1 || t > m)
        throw std::invalid_argument("correlation_attack: msb_count must be in [1, log2 M]");
    const std::size_t n = obs.samples.size();
    if (n == 0) throw std::invalid_argument("correlation_attack: empty observation");

    // (1) per-slot ML symbol estimate under the known data bit
    std::vector<Symbol> z_hat(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& y = obs.samples[i];
        double best = -std::numeric_limits<double>::infinity();
        Symbol bz = 0;
        for (Symbol z = 0; z < params.M; ++z) {
            const double th = map_angle(obs.plaintext[i], z, params).radians;
            const double u = y.y1 * std::cos(th) + y.y2 * std::sin(th);
            if (u > best) {
                best = u;
                bz = z;
            }
        }
        z_hat[i] = bz;
    }

    // (2) top-t MSBs of each estimate, (3) their linear-form masks
    const std::size_t nobs = n * t;
    std::vector<Bit> obs_bits(nobs);
    std::vector<std::uint64_t> obs_masks(nobs);
    const auto all_masks = linear_form_masks(model, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < t; ++j) {
            obs_bits[i * t + j] = static_cast<Bit>((z_hat[i] >> (m - 1 - j)) & 1u);
            obs_masks[i * t + j] = all_masks[i * m + j];
        }

    // (4) exhaustive ML decode: agreement count per seed
    const std::uint64_t space = 1ull << model.length;
    const std::size_t cap = std::max<std::size_t>(1, opts.ranked_list);
    std::vector<Ranked> top;

    auto score_of = [&](std::uint64_t seed) {
        std::uint32_t sc = 0;
        for (std::size_t k = 0; k < nobs; ++k)
            sc += static_cast<std::uint32_t>(
                (__builtin_parityll(obs_masks[k] & seed) ^ obs_bits[k]) == 0);
        return sc;
    };

    if (mode == ExecMode::serial) {
        // reference path: full score table, then a single ranking scan
        std::vector<std::uint32_t> scores(space);
        for (std::uint64_t seed = 0; seed < space; ++seed) scores[seed] = score_of(seed);
        for (std::uint64_t seed = 0; seed < space; ++seed)
            push_ranked(top, cap, Ranked{scores[seed], seed});
    } else {
        const std::uint64_t nchunks = detail::block_count(space, kSeedChunk);
        std::vector<std::vector<Ranked>> parts(nchunks);
        detail::for_each_block(nchunks, mode, [&](std::uint64_t c) {
            const std::uint64_t first = c * kSeedChunk;
            const std::uint64_t last = std::min(space, first + kSeedChunk);
            std::vector<Ranked> local;
            for (std::uint64_t seed = first; seed < last; ++seed)
                push_ranked(local, cap, Ranked{score_of(seed), seed});
            parts[c] = std::move(local);
        });
        for (const auto& part : parts)
            for (const Ranked& r : part) push_ranked(top, cap, r);
    }

    AttackReport rep;
    rep.attack = "correlation";
    rep.work = space;
    rep.parameters["key_bits"] = std::to_string(model.length);
    rep.parameters["M"] = std::to_string(params.M);
    rep.parameters["S"] = std::to_string(params.S);
    rep.parameters["n_slots"] = std::to_string(n);
    rep.parameters["msb_count"] = std::to_string(t);
    rep.surviving = top.size();
    for (const Ranked& r : top) rep.survivors.push_back(r.seed);
    rep.success = !top.empty() && top.front().seed == obs.true_seed;
    rep.notes = "survivors holds the ranked candidate seeds, best first";

    // channel error of the MSB bits relative to the true seed's forms
    std::uint64_t flips = 0;
    for (std::size_t k = 0; k < nobs; ++k)
        flips += (__builtin_parityll(obs_masks[k] & obs.true_seed) != obs_bits[k]);
    rep.error_rates["msb_bit_error"] = static_cast<double>(flips) / static_cast<double>(nobs);
    std::uint64_t sym_err = 0;
    for (std::size_t i = 0; i < n; ++i) sym_err += (z_hat[i] != obs.true_symbols[i]);
    rep.error_rates["symbol_error"] = static_cast<double>(sym_err) / static_cast<double>(n);
    rep.error_rates["true_seed_agreement"] =
        static_cast<double>(score_of(obs.true_seed)) / static_cast<double>(nobs);
    return rep;
}

BruteforceExperiment bruteforce_experiment(const SystemParams& params, const ExpanderConfig& cfg,
                                           const WidthPolicy& policy, std::size_t n_slots,
                                           std::uint64_t runs, std::uint64_t master_seed,
                                           const BruteforceOptions& opts, ExecMode mode) {
    if (cfg.kind != ExpanderConfig::Kind::lfsr)
        throw std::invalid_argument("bruteforce_experiment: needs an LFSR expander");
    BruteforceExperiment ex;
    ex.n_slots = n_slots;
    ex.runs = runs;
    std::uint64_t survived = 0;
    double survivors_sum = 0.0, slots_sum = 0.0;
    for (std::uint64_t r = 0; r < runs; ++r) {
        auto eng = rng::make_stream(master_seed, "bruteforce", r);
        const std::uint64_t true_seed = eng() & seed_mask(cfg.spec.length);
        const auto obs = simulate_known_plaintext(params, cfg, true_seed, n_slots, eng);
        const auto wedges = wedges_from_observation(obs, params, policy);
        BruteforceOptions run_opts = opts;
        run_opts.true_seed = true_seed;
        const auto rep = assisted_bruteforce(wedges, cfg.spec, params, run_opts, mode);
        survived += rep.success ? 1 : 0;
        survivors_sum += static_cast<double>(rep.surviving);
        slots_sum += rep.error_rates.at("mean_slots_checked");
    }
    ex.survival_rate = static_cast<double>(survived) / static_cast<double>(runs);
    ex.mean_survivors = survivors_sum / static_cast<double>(runs);
    ex.mean_slots_checked = slots_sum / static_cast<double>(runs);
    return ex;
}

CorrelationExperiment correlation_experiment(const SystemParams& params,
                                             const ExpanderConfig& true_cfg,
                                             const LfsrSpec& model, std::size_t n_slots,
                                             std::uint64_t runs, std::uint64_t master_seed,
                                             const CorrelationOptions& opts, ExecMode mode) {
    CorrelationExperiment ex;
    ex.runs = runs;
    double perr_sum = 0.0;
    for (std::uint64_t r = 0; r < runs; ++r) {
        auto eng = rng::make_stream(master_seed, "correlation", r);
        const std::uint64_t true_seed = eng() & seed_mask(true_cfg.spec.length);
        const auto obs = simulate_known_plaintext(params, true_cfg, true_seed, n_slots, eng);
        const auto rep = correlation_attack(obs, model, params, opts, mode);
        ex.successes += rep.success ? 1 : 0;
        perr_sum += rep.error_rates.at("msb_bit_error");
    }
    ex.success_rate = static_cast<double>(ex.successes) / static_cast<double>(runs);
    ex.mean_msb_error = perr_sum / static_cast<double>(runs);
    return ex;
}

}  // namespace aeta

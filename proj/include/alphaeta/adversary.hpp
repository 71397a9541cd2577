#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alphaeta/constellation.hpp"
#include "alphaeta/exec.hpp"
#include "alphaeta/keystream.hpp"
#include "alphaeta/measurement.hpp"
#include "alphaeta/stats.hpp"

namespace aeta {

/// Number of keystream symbols compatible with one known-plaintext
/// heterodyne observation: M / (pi sqrt(S)).
double gamma_analytic(const SystemParams& params);

/// Angular wedge width used when tabulating candidate symbols.
///   standard:   full width 2/sqrt(S); makes the mean candidate count equal
///               gamma_analytic by construction.
///   confidence: full width 2 * z_p / sqrt(2S), containing the true symbol
///               with probability ~p (Gaussian phase-noise approximation,
///               std 1/sqrt(2S), valid for S >> 1).
struct WidthPolicy {
    enum class Kind { standard, confidence };
    Kind kind = Kind::standard;
    double confidence = 0.0;

    static WidthPolicy standard() { return WidthPolicy{Kind::standard, 0.0}; }
    static WidthPolicy confidence_level(double p);

    double width(const SystemParams& params) const;
    std::string name() const;
};

/// Per-slot candidate set {z : dist(map_angle(x, z), phase estimate) <= width/2}.
struct WedgeSet {
    std::size_t slot = 0;
    std::vector<Symbol> candidates;  // ascending
    double width = 0.0;
};

WedgeSet wedge_candidates(const QuadratureSample& sample, Bit known_x,
                          const SystemParams& params, double width, std::size_t slot = 0);

struct GammaEstimate {
    double mean = 0.0;
    double stddev = 0.0;
    std::uint64_t trials = 0;
};

/// Monte Carlo mean wedge size over uniform true symbols with known
/// plaintext. `dsr_delta` > 0 additionally dithers the transmitted angle by
/// a uniform offset of that full width before Eve measures.
GammaEstimate gamma_empirical(const SystemParams& params, const WidthPolicy& policy,
                              std::uint64_t trials, std::uint64_t master_seed,
                              ExecMode mode = ExecMode::openmp, double dsr_delta = 0.0);

/// Structured result of one attack experiment.
struct AttackReport {
    std::string attack;
    std::map<std::string, std::string> parameters;
    std::uint64_t surviving = 0;
    std::vector<std::uint64_t> survivors;  // capped; `surviving` is always exact
    bool success = false;
    std::uint64_t work = 0;
    std::map<std::string, double> error_rates;
    std::string notes;

    std::string to_json() const;
};

/// Eve's view of one known-plaintext transmission, plus the ground truth
/// the harness keeps for scoring.
struct KnownPlaintextObservation {
    std::vector<QuadratureSample> samples;
    BitSeq plaintext;
    std::vector<Symbol> true_symbols;
    std::uint64_t true_seed = 0;
};

KnownPlaintextObservation simulate_known_plaintext(const SystemParams& params,
                                                   const ExpanderConfig& cfg,
                                                   std::uint64_t true_seed, std::size_t n_slots,
                                                   std::mt19937_64& eng,
                                                   double dsr_delta = 0.0);

std::vector<WedgeSet> wedges_from_observation(const KnownPlaintextObservation& obs,
                                              const SystemParams& params,
                                              const WidthPolicy& policy);

struct BruteforceOptions {
    std::uint32_t guard_bits = 28;  // refuse larger registers unless forced
    bool force = false;
    std::size_t max_survivors_stored = 1ull << 16;
    std::optional<std::uint64_t> true_seed;
};

/// Enumerates every seed of the register and keeps those whose keystream
/// hits every wedge. Work is always 2^|K|; early-abort depth is reported.
AttackReport assisted_bruteforce(const std::vector<WedgeSet>& wedges, const LfsrSpec& spec,
                                 const SystemParams& params, const BruteforceOptions& opts = {},
                                 ExecMode mode = ExecMode::openmp);

struct Complexity {
    double c = 1.0;
    double log10_c = 0.0;
    double gamma_used = 1.0;
    bool clamped = false;
};

/// Search-cost inflation factor C = gamma^(|K|/log2 M). Gammas below 1 are
/// clamped to 1 (no residual ambiguity, no inflation).
Complexity complexity_estimate(double gamma, std::uint64_t key_bits, const SystemParams& params);

enum class EveRule { nearest_index, full_ml };

/// Ciphertext-only single-slot bit guess from one heterodyne outcome.
Bit eve_ciphertext_only_bit(const QuadratureSample& sample, const SystemParams& params,
                            EveRule rule);

/// Monte Carlo bit error of the ciphertext-only guesser over uniform random
/// data bits and keystream symbols.
stats::Binomial eve_co_error(const SystemParams& params, EveRule rule, std::uint64_t trials,
                             std::uint64_t master_seed, ExecMode mode = ExecMode::openmp);

struct CorrelationOptions {
    std::uint32_t msb_count = 1;  // t: most significant bits taken per symbol
    std::uint32_t guard_bits = 24;
    bool force = false;
    std::size_t ranked_list = 8;
};

/// Linear decoding of the seed from noisy per-slot symbol estimates:
/// ML symbol estimate -> top-t MSBs -> exhaustive GF(2) agreement scoring
/// against the register's linear forms. Success means the true seed ranks
/// first.
AttackReport correlation_attack(const KnownPlaintextObservation& obs, const LfsrSpec& model,
                                const SystemParams& params, const CorrelationOptions& opts = {},
                                ExecMode mode = ExecMode::openmp);

// Aggregated multi-run experiments (one derived stream per run).

struct BruteforceExperiment {
    std::size_t n_slots = 0;
    std::uint64_t runs = 0;
    double survival_rate = 0.0;   // fraction of runs where the true seed survived
    double mean_survivors = 0.0;
    double mean_slots_checked = 0.0;
};

BruteforceExperiment bruteforce_experiment(const SystemParams& params, const ExpanderConfig& cfg,
                                           const WidthPolicy& policy, std::size_t n_slots,
                                           std::uint64_t runs, std::uint64_t master_seed,
                                           const BruteforceOptions& opts = {},
                                           ExecMode mode = ExecMode::openmp);

struct CorrelationExperiment {
    std::uint64_t runs = 0;
    std::uint64_t successes = 0;
    double success_rate = 0.0;
    double mean_msb_error = 0.0;
};

CorrelationExperiment correlation_experiment(const SystemParams& params,
                                             const ExpanderConfig& true_cfg,
                                             const LfsrSpec& model, std::size_t n_slots,
                                             std::uint64_t runs, std::uint64_t master_seed,
                                             const CorrelationOptions& opts = {},
                                             ExecMode mode = ExecMode::openmp);

}  // namespace aeta

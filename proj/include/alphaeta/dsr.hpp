#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "alphaeta/exec.hpp"
#include "alphaeta/receiver.hpp"

namespace aeta {

/// Deliberate signal randomization: each transmitted angle gets a fresh
/// uniform offset on [-delta/2, +delta/2], unknown to every party. delta
/// must stay below pi so the mean never crosses the receiver's decision
/// boundary. With `coupling_g` set, delta follows g/sqrt(S).
struct DsrPolicy {
    double delta = 0.0;
    std::optional<double> coupling_g;

    static DsrPolicy fixed(double delta);
    static DsrPolicy coupled(double g);

    double effective_delta(const SystemParams& params) const;
};

/// Applies fresh offsets; they are drawn, used, and dropped.
CipherFrame dsr_apply(const CipherFrame& frame, const DsrPolicy& policy,
                      const SystemParams& params, std::mt19937_64& eng);

/// Mean receiver error under randomization, E_xi[Q(2 sqrt(S) cos xi)], by
/// quadrature. The log10 variant stays meaningful when the linear value
/// underflows (S large); base-10 logs, -inf for delta = 0 penalties.
double dsr_ber_analytic(const SystemParams& params, double delta);
double dsr_log10_ber_analytic(const SystemParams& params, double delta);
double dsr_log10_penalty_analytic(const SystemParams& params, double delta);

struct PenaltyResult {
    BerEstimate with_dsr;
    BerEstimate without_dsr;
    double penalty_mc = 0.0;  // paired estimate, shared noise per slot
    double analytic_with = 0.0;
    double analytic_without = 0.0;
    double penalty_analytic = 0.0;
    double log10_penalty_analytic = 0.0;
};

/// Bob's decoding penalty with his decision rule unchanged. The Monte Carlo
/// uses common random numbers for the dithered and plain pipelines, so
/// delta = 0 gives a penalty of exactly zero.
PenaltyResult bob_penalty(const SystemParams& params, const DsrPolicy& policy,
                          std::uint64_t trials, std::uint64_t master_seed,
                          ExecMode mode = ExecMode::openmp);

struct DsrSweepRow {
    double S = 0.0;
    std::uint32_t M = 0;
    double delta = 0.0;
    double bob_ber = 0.0;          // Monte Carlo, with randomization applied
    double bob_penalty = 0.0;      // analytic; may underflow to 0 in linear form
    double log10_bob_penalty = 0.0;
    double eve_gamma = 0.0;        // empirical wedge mean seen through the dither
};

/// The scaling run: for each S pick M as the nearest power of two to
/// pi * gamma_target * sqrt(S) and delta = g/sqrt(S), then record Bob's
/// penalty and Eve's empirical wedge count.
std::vector<DsrSweepRow> dsr_scaling_experiment(double gamma_target, std::span<const double> S_list,
                                                std::uint64_t trials, std::uint64_t master_seed,
                                                double coupling_g = 2.0,
                                                ExecMode mode = ExecMode::openmp);

/// Nearest power of two to x (ties resolve downward), never below 2.
std::uint32_t nearest_power_of_two(double x);

}  // namespace aeta

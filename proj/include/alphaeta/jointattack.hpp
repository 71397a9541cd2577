#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "alphaeta/constellation.hpp"
#include "alphaeta/exec.hpp"
#include "alphaeta/keystream.hpp"

namespace aeta {

/// Gram matrix of the product coherent states induced by a set of seed
/// hypotheses under a fixed known plaintext. Hermitian, PSD, unit diagonal.
struct GramMatrix {
    Eigen::MatrixXcd entries;
    std::uint64_t n_slots = 0;
    double S = 0.0;

    Eigen::Index dim() const { return entries.rows(); }
};

/// Core constructor: row k lists the transmitted angles of hypothesis k,
/// entry (k, k') = prod_i <alpha e^{i a_k(i)} | alpha e^{i a_k'(i)}>.
GramMatrix build_gram_from_angles(const std::vector<std::vector<double>>& per_state_angles,
                                  double S, ExecMode mode = ExecMode::openmp);

struct JointGuard {
    std::uint32_t max_key_bits = 12;  // N = 2^|K| dense Hermitian, desk scale
    bool force = false;
};

/// Gram over all 2^|K| seeds of the register for the given plaintext.
GramMatrix build_gram(const BitSeq& plaintext, const LfsrSpec& spec, const SystemParams& params,
                      const JointGuard& guard = {}, ExecMode mode = ExecMode::openmp);

/// Average error probability of the square-root measurement:
/// 1 - (1/N) sum_k ((G^{1/2})_kk)^2, with the pseudo square root clamping
/// eigenvalues below 1e-12 * lambda_max to zero.
double srm_error(const GramMatrix& gram);

enum class PlaintextPolicy { all_zeros, fixed_random };

struct PeCurve {
    std::vector<std::pair<std::uint64_t, double>> rows;  // (n, pe)
    std::uint32_t key_bits = 0;
    std::uint32_t M = 0;
    double S = 0.0;
    PlaintextPolicy policy = PlaintextPolicy::all_zeros;
};

/// Discrimination error versus data length, extending one keystream. For a
/// fixed_random plaintext the bits come from (master_seed, "joint", 0).
PeCurve pe_vs_n(const LfsrSpec& spec, const SystemParams& params,
                std::span<const std::uint64_t> n_values, PlaintextPolicy policy,
                std::uint64_t master_seed, const JointGuard& guard = {},
                ExecMode mode = ExecMode::openmp);

// Binary dump: magic "AEGRAMv1", then N, n_slots (u64 LE), S (f64 LE),
// then N*N complex entries row-major as (re, im) f64 pairs.
void write_gram_binary(const GramMatrix& gram, const std::filesystem::path& path);
GramMatrix read_gram_binary(const std::filesystem::path& path);

}  // namespace aeta

#include "alphaeta/jointattack.hpp"

#include <algorithm>
#include <complex>
#include <fstream>
#include <sstream>

#include "alphaeta/errors.hpp"
#include "alphaeta/measurement.hpp"
#include "alphaeta/rng.hpp"
#include "parallel.hpp"

namespace aeta {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kEigClampRel = 1e-12;

using cplx = std::complex<double>;

// Accumulated overlap exponent between two angle rows:
// sum_i S * (e^{i(b_i - a_i)} - 1); the Gram entry is exp of this.
cplx overlap_exponent(std::span<const double> a, std::span<const double> b, double S) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        acc += cplx(S * (std::cos(d) - 1.0), S * std::sin(d));
    }
    return acc;
}

void fill_gram_serial(const std::vector<std::vector<double>>& rows, double S,
                      Eigen::MatrixXcd& g) {
    const Eigen::Index n = g.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        g(k, k) = cplx(1.0, 0.0);
        for (Eigen::Index k2 = k + 1; k2 < n; ++k2) {
            const cplx e = std::exp(overlap_exponent(rows[k], rows[k2], S));
            g(k, k2) = e;
            g(k2, k) = std::conj(e);
        }
    }
}

void fill_gram_parallel(const std::vector<std::vector<double>>& rows, double S,
                        Eigen::MatrixXcd& g) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.rows());
    detail::for_each_block(n, ExecMode::openmp, [&](std::uint64_t k) {
        g(k, k) = cplx(1.0, 0.0);
        for (std::uint64_t k2 = k + 1; k2 < n; ++k2) {
            const cplx e = std::exp(overlap_exponent(rows[k], rows[k2], S));
            g(k, k2) = e;
            g(k2, k) = std::conj(e);
        }
    });
}

std::vector<std::vector<double>> seed_angle_rows(const BitSeq& plaintext, const LfsrSpec& spec,
                                                 const SystemParams& params) {
    const std::uint64_t n_states = 1ull << spec.length;
    const auto cfg = ExpanderConfig::lfsr_config(spec);
    std::vector<std::vector<double>> rows(n_states);
    for (std::uint64_t seed = 0; seed < n_states; ++seed) {
        const auto symbols = keystream_symbols(seed, cfg, plaintext.size(), params.M);
        auto& row = rows[seed];
        row.reserve(plaintext.size());
        for (std::size_t i = 0; i < plaintext.size(); ++i)
            row.push_back(map_angle(plaintext[i], symbols[i], params).radians);
    }
    return rows;
}

void check_guard(const LfsrSpec& spec, const JointGuard& guard) {
    if (spec.length > guard.max_key_bits && !guard.force)
        throw GuardError("joint attack: |K| = " + std::to_string(spec.length) +
                         " exceeds the guard of " + std::to_string(guard.max_key_bits) +
                         " bits (N = 2^|K| dense Hermitian); pass force to override");
    if (spec.length > 24)
        throw std::invalid_argument("joint attack: 2^|K| states do not fit in memory");
}

}  // namespace

GramMatrix build_gram_from_angles(const std::vector<std::vector<double>>& per_state_angles,
                                  double S, ExecMode mode) {
    if (per_state_angles.empty())
        throw std::invalid_argument("build_gram_from_angles: need at least one state");
    const std::size_t n_slots = per_state_angles.front().size();
    for (const auto& row : per_state_angles)
        if (row.size() != n_slots)
            throw std::invalid_argument("build_gram_from_angles: ragged angle rows");
    if (!(S >= 0.0)) throw std::invalid_argument("build_gram_from_angles: S must be >= 0");

    GramMatrix gram;
    gram.n_slots = n_slots;
    gram.S = S;
    const Eigen::Index n = static_cast<Eigen::Index>(per_state_angles.size());
    gram.entries.resize(n, n);
    if (mode == ExecMode::serial)
        fill_gram_serial(per_state_angles, S, gram.entries);
    else
        fill_gram_parallel(per_state_angles, S, gram.entries);
    return gram;
}

GramMatrix build_gram(const BitSeq& plaintext, const LfsrSpec& spec, const SystemParams& params,
                      const JointGuard& guard, ExecMode mode) {
    check_guard(spec, guard);
    return build_gram_from_angles(seed_angle_rows(plaintext, spec, params), params.S, mode);
}

double srm_error(const GramMatrix& gram) {
    const Eigen::Index n = gram.dim();
    if (n < 1 || gram.entries.cols() != n)
        throw std::invalid_argument("srm_error: Gram matrix must be square and nonempty");

    const double herm = (gram.entries - gram.entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol) {
        std::ostringstream os;
        os << "srm_error: Gram not Hermitian, max |G - G^H| = " << herm;
        throw NumericalError(os.str());
    }
    for (Eigen::Index k = 0; k < n; ++k)
        if (std::abs(gram.entries(k, k) - cplx(1.0, 0.0)) > kHermTol)
            throw NumericalError("srm_error: Gram diagonal is not 1");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram.entries);
    if (es.info() != Eigen::Success)
        throw NumericalError("srm_error: eigendecomposition failed");
    const Eigen::VectorXd lam = es.eigenvalues();
    const double lam_max = lam.maxCoeff();
    const double lam_min = lam.minCoeff();
    if (lam_min < -kEigClampRel * std::max(lam_max, 1.0)) {
        std::ostringstream os;
        os << "srm_error: Gram not PSD, lambda_min = " << lam_min
           << " vs lambda_max = " << lam_max;
        throw NumericalError(os.str());
    }

    // diag of the pseudo square root: d_k = sum_j sqrt(lam_j) |V(k,j)|^2
    Eigen::VectorXd sq(n);
    for (Eigen::Index j = 0; j < n; ++j)
        sq(j) = lam(j) > kEigClampRel * lam_max ? std::sqrt(lam(j)) : 0.0;
    const auto& V = es.eigenvectors();
    double success = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double d = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) d += sq(j) * std::norm(V(k, j));
        success += d * d;
    }
    success /= static_cast<double>(n);
    const double cap = 1.0 - 1.0 / static_cast<double>(n);
    return std::min(cap, std::max(0.0, 1.0 - success));
}

PeCurve pe_vs_n(const LfsrSpec& spec, const SystemParams& params,
                std::span<const std::uint64_t> n_values, PlaintextPolicy policy,
                std::uint64_t master_seed, const JointGuard& guard, ExecMode mode) {
    check_guard(spec, guard);
    if (n_values.empty()) throw std::invalid_argument("pe_vs_n: no data lengths given");
    std::vector<std::uint64_t> ns(n_values.begin(), n_values.end());
    std::sort(ns.begin(), ns.end());
    const std::uint64_t n_max = ns.back();

    BitSeq plaintext(n_max, 0);
    if (policy == PlaintextPolicy::fixed_random) {
        auto eng = rng::make_stream(master_seed, "joint", 0);
        for (auto& b : plaintext) b = static_cast<Bit>(eng() & 1u);
    }

    const auto rows = seed_angle_rows(plaintext, spec, params);
    const std::uint64_t n_states = 1ull << spec.length;

    PeCurve curve;
    curve.key_bits = spec.length;
    curve.M = params.M;
    curve.S = params.S;
    curve.policy = policy;

    // exponent matrix grows slot by slot; the Gram at each requested n is
    // its elementwise exp
    Eigen::MatrixXcd expo = Eigen::MatrixXcd::Zero(n_states, n_states);
    std::uint64_t done = 0;
    for (std::uint64_t target : ns) {
        if (target > done) {
            detail::for_each_block(n_states, mode, [&](std::uint64_t k) {
                for (std::uint64_t k2 = k + 1; k2 < n_states; ++k2) {
                    cplx acc(0.0, 0.0);
                    for (std::uint64_t i = done; i < target; ++i) {
                        const double d = rows[k2][i] - rows[k][i];
                        acc += cplx(params.S * (std::cos(d) - 1.0), params.S * std::sin(d));
                    }
                    expo(k, k2) += acc;
                }
            });
            done = target;
        }
        GramMatrix gram;
        gram.n_slots = target;
        gram.S = params.S;
        gram.entries.resize(n_states, n_states);
        for (std::uint64_t k = 0; k < n_states; ++k) {
            gram.entries(k, k) = cplx(1.0, 0.0);
            for (std::uint64_t k2 = k + 1; k2 < n_states; ++k2) {
                const cplx e = std::exp(expo(k, k2));
                gram.entries(k, k2) = e;
                gram.entries(k2, k) = std::conj(e);
            }
        }
        curve.rows.emplace_back(target, srm_error(gram));
    }
    return curve;
}

void write_gram_binary(const GramMatrix& gram, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_gram_binary: cannot open " + path.string());
    f.write("AEGRAMv1", 8);
    const std::uint64_t n = static_cast<std::uint64_t>(gram.dim());
    f.write(reinterpret_cast<const char*>(&n), 8);
    f.write(reinterpret_cast<const char*>(&gram.n_slots), 8);
    f.write(reinterpret_cast<const char*>(&gram.S), 8);
    for (Eigen::Index r = 0; r < gram.dim(); ++r)
        for (Eigen::Index c = 0; c < gram.dim(); ++c) {
            const double re = gram.entries(r, c).real();
            const double im = gram.entries(r, c).imag();
            f.write(reinterpret_cast<const char*>(&re), 8);
            f.write(reinterpret_cast<const char*>(&im), 8);
        }
    if (!f) throw std::runtime_error("write_gram_binary: write failed for " + path.string());
}

GramMatrix read_gram_binary(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_gram_binary: cannot open " + path.string());
    char magic[8];
    f.read(magic, 8);
    if (!f || std::string_view(magic, 8) != "AEGRAMv1")
        throw std::runtime_error("read_gram_binary: bad magic");
    std::uint64_t n = 0;
    GramMatrix gram;
    f.read(reinterpret_cast<char*>(&n), 8);
    f.read(reinterpret_cast<char*>(&gram.n_slots), 8);
    f.read(reinterpret_cast<char*>(&gram.S), 8);
    gram.entries.resize(n, n);
    for (std::uint64_t r = 0; r < n; ++r)
        for (std::uint64_t c = 0; c < n; ++c) {
            double re = 0, im = 0;
            f.read(reinterpret_cast<char*>(&re), 8);
            f.read(reinterpret_cast<char*>(&im), 8);
            gram.entries(r, c) = cplx(re, im);
        }
    if (!f) throw std::runtime_error("read_gram_binary: truncated file");
    return gram;
}

}  // namespace aeta

#include "alphaeta/dsr.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "alphaeta/adversary.hpp"
#include "alphaeta/rng.hpp"
#include "parallel.hpp"

namespace aeta {

namespace {

constexpr std::uint64_t kPenaltyBlock = 4096;
constexpr int kQuadIntervals = 512;  // composite Simpson, even count

void check_delta(double delta) {
    if (!(delta >= 0.0) || delta >= std::numbers::pi)
        throw std::invalid_argument("DsrPolicy: delta must lie in [0, pi)");
}

// log of (1/delta) * integral of Q(2 sqrt(S) cos xi) over [-delta/2, delta/2],
// evaluated entirely in the log domain so S ~ 1e4 stays representable.
double log_mean_tail(const SystemParams& p, double delta) {
    const double h = 0.5 * delta / kQuadIntervals;
    std::vector<double> terms;
    terms.reserve(kQuadIntervals + 1);
    for (int j = 0; j <= kQuadIntervals; ++j) {
        const double xi = h * j;
        double w = (j == 0 || j == kQuadIntervals) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        terms.push_back(stats::log_normal_tail(2.0 * p.alpha * std::cos(xi)) + std::log(w));
    }
    // even integrand: integral over [0, delta/2], times 2, over delta
    const double log_simpson = stats::logsumexp(terms) + std::log(h / 3.0);
    return log_simpson + std::log(2.0 / delta);
}

}  // namespace

DsrPolicy DsrPolicy::fixed(double delta) {
    check_delta(delta);
    return DsrPolicy{delta, std::nullopt};
}

DsrPolicy DsrPolicy::coupled(double g) {
    if (!(g >= 0.0)) throw std::invalid_argument("DsrPolicy: coupling constant must be >= 0");
    return DsrPolicy{0.0, g};
}

double DsrPolicy::effective_delta(const SystemParams& params) const {
    double d = delta;
    if (coupling_g) {
        if (!(params.S > 0.0))
            throw std::invalid_argument("DsrPolicy: coupled delta needs S > 0");
        d = *coupling_g / params.alpha;
    }
    check_delta(d);
    return d;
}

CipherFrame dsr_apply(const CipherFrame& frame, const DsrPolicy& policy,
                      const SystemParams& params, std::mt19937_64& eng) {
    const double d = policy.effective_delta(params);
    CipherFrame out;
    out.angles.reserve(frame.size());
    if (d == 0.0) {
        out.angles = frame.angles;
        return out;
    }
    std::uniform_real_distribution<double> dither(-0.5 * d, 0.5 * d);
    for (double a : frame.angles) out.angles.push_back(wrap_angle(a + dither(eng)));
    return out;
}

double dsr_log10_ber_analytic(const SystemParams& params, double delta) {
    check_delta(delta);
    constexpr double kLn10 = 2.302585092994046;
    if (delta == 0.0) return stats::log_normal_tail(2.0 * params.alpha) / kLn10;
    return log_mean_tail(params, delta) / kLn10;
}

double dsr_ber_analytic(const SystemParams& params, double delta) {
    return std::pow(10.0, dsr_log10_ber_analytic(params, delta));
}

double dsr_log10_penalty_analytic(const SystemParams& params, double delta) {
    check_delta(delta);
    constexpr double kLn10 = 2.302585092994046;
    if (delta == 0.0) return -std::numeric_limits<double>::infinity();
    const double a = log_mean_tail(params, delta);                    // ln E[Q]
    const double b = stats::log_normal_tail(2.0 * params.alpha);      // ln Q
    // penalty = e^a - e^b with a > b
    return (a + std::log1p(-std::exp(b - a))) / kLn10;
}

PenaltyResult bob_penalty(const SystemParams& params, const DsrPolicy& policy,
                          std::uint64_t trials, std::uint64_t master_seed, ExecMode mode) {
    if (trials == 0) throw std::invalid_argument("bob_penalty: need at least one trial");
    const double d = policy.effective_delta(params);

    const std::uint64_t nblocks = detail::block_count(trials, kPenaltyBlock);
    std::vector<std::uint64_t> err_dsr(nblocks, 0), err_plain(nblocks, 0);

    detail::for_each_block(nblocks, mode, [&](std::uint64_t b) {
        auto eng = rng::make_stream(master_seed, "dsr-penalty", b);
        std::uniform_int_distribution<Symbol> uz(0, params.M - 1);
        std::uniform_real_distribution<double> dither(-0.5 * d, 0.5 * d);
        std::normal_distribution<double> n01;
        const std::uint64_t lo = b * kPenaltyBlock;
        const std::uint64_t hi = std::min(trials, lo + kPenaltyBlock);
        const double noise_sd = std::sqrt(kHomodyneVariance);
        std::uint64_t e1 = 0, e0 = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Symbol z = uz(eng);
            const Bit x = static_cast<Bit>(eng() & 1u);
            const double theta = map_angle(x, z, params).radians;
            const double xi = d > 0.0 ? dither(eng) : 0.0;
            const double lo_angle = static_cast<double>(z) * params.grid_step();
            const double noise = noise_sd * n01(eng);  // shared between both pipelines
            const double with = params.alpha * std::cos(theta + xi - lo_angle) + noise;
            const double without = params.alpha * std::cos(theta - lo_angle) + noise;
            if (bob_decide(z, with, params) != x) ++e1;
            if (bob_decide(z, without, params) != x) ++e0;
        }
        err_dsr[b] = e1;
        err_plain[b] = e0;
    });

    std::uint64_t tot1 = 0, tot0 = 0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        tot1 += err_dsr[b];
        tot0 += err_plain[b];
    }
    PenaltyResult r;
    r.with_dsr = stats::binomial_estimate(tot1, trials);
    r.without_dsr = stats::binomial_estimate(tot0, trials);
    r.penalty_mc = r.with_dsr.p - r.without_dsr.p;
    r.analytic_without = bob_ber_analytic(params);
    r.analytic_with = d == 0.0 ? r.analytic_without : dsr_ber_analytic(params, d);
    r.penalty_analytic = r.analytic_with - r.analytic_without;
    r.log10_penalty_analytic = dsr_log10_penalty_analytic(params, d);
    return r;
}

std::uint32_t nearest_power_of_two(double x) {
    std::uint32_t best = 2;
    double best_d = std::fabs(x - 2.0);
    for (std::uint32_t k = 2; k < 31; ++k) {
        const double v = static_cast<double>(1u << k);
        const double dd = std::fabs(x - v);
        if (dd < best_d) {
            best_d = dd;
            best = 1u << k;
        }
    }
    return best;
}

std::vector<DsrSweepRow> dsr_scaling_experiment(double gamma_target,
                                                std::span<const double> S_list,
                                                std::uint64_t trials, std::uint64_t master_seed,
                                                double coupling_g, ExecMode mode) {
    if (!(gamma_target > 0.0))
        throw std::invalid_argument("dsr_scaling_experiment: gamma_target must be positive");
    std::vector<DsrSweepRow> rows;
    for (double S : S_list) {
        if (!(S > 0.0)) throw std::invalid_argument("dsr_scaling_experiment: S must be positive");
        DsrSweepRow row;
        row.S = S;
        row.M = nearest_power_of_two(std::numbers::pi * gamma_target * std::sqrt(S));
        const auto params = SystemParams::make(row.M, S);
        const auto policy = DsrPolicy::coupled(coupling_g);
        row.delta = policy.effective_delta(params);
        const auto pen = bob_penalty(params, policy, trials, master_seed, mode);
        row.bob_ber = pen.with_dsr.p;
        row.bob_penalty = pen.penalty_analytic;
        row.log10_bob_penalty = pen.log10_penalty_analytic;
        const auto g = gamma_empirical(params, WidthPolicy::standard(), trials, master_seed,
                                       mode, row.delta);
        row.eve_gamma = g.mean;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace aeta

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "alphaeta/adversary.hpp"
#include "alphaeta/dsr.hpp"
#include "alphaeta/rng.hpp"

using namespace aeta;

namespace {
constexpr double pi = std::numbers::pi;

// composite Simpson in the linear domain, independent of the log-domain
// integration in the implementation
double quad_oracle(const SystemParams& p, double delta) {
    const int n = 2000;
    const double h = delta / n;
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double xi = -0.5 * delta + h * j;
        const double w = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc += w * stats::normal_tail(2.0 * p.alpha * std::cos(xi));
    }
    return acc * h / (3.0 * delta);
}
}  // namespace

TEST_CASE("zero-width randomization is the identity") {
    const auto p = SystemParams::make(16, 4.0);
    CipherFrame f{{0.1, 2.5, 4.0}};
    auto eng = rng::make_stream(1, "dsr", 0);
    const auto out = dsr_apply(f, DsrPolicy::fixed(0.0), p, eng);
    CHECK(out.angles == f.angles);
}

TEST_CASE("offsets never leave the stated support") {
    const auto p = SystemParams::make(16, 4.0);
    const double delta = pi / 2.0;
    auto eng = rng::make_stream(1, "dsr", 1);
    CipherFrame f{std::vector<double>(100000, 1.0)};
    const auto out = dsr_apply(f, DsrPolicy::fixed(delta), p, eng);
    for (double a : out.angles) REQUIRE(angular_distance(a, 1.0) <= 0.5 * delta + 1e-12);
}

TEST_CASE("offsets look uniform on their support") {
    const auto p = SystemParams::make(16, 4.0);
    const double delta = 1.0;
    auto eng = rng::make_stream(1, "dsr", 2);
    const int n = 100000;
    CipherFrame f{std::vector<double>(n, 3.0)};
    const auto out = dsr_apply(f, DsrPolicy::fixed(delta), p, eng);
    const int bins = 20;
    std::vector<int> hist(bins, 0);
    for (double a : out.angles) {
        double off = a - 3.0;
        int b = static_cast<int>((off + 0.5 * delta) / delta * bins);
        if (b == bins) b = bins - 1;
        REQUIRE(b >= 0);
        REQUIRE(b < bins);
        ++hist[b];
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(n) / bins;
    for (int c : hist) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 43.82);  // chi-square 0.999 quantile, 19 dof
}

TEST_CASE("policy validation") {
    CHECK_THROWS_AS((void)DsrPolicy::fixed(-0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)DsrPolicy::fixed(pi), std::invalid_argument);
    const auto p = SystemParams::make(16, 4.0);
    CHECK(DsrPolicy::coupled(2.0).effective_delta(p) == doctest::Approx(1.0));
    // coupled delta must stay below pi too
    const auto tiny = SystemParams::make(16, 0.1);
    CHECK_THROWS_AS((void)DsrPolicy::coupled(12.0).effective_delta(tiny),
                    std::invalid_argument);
}

TEST_CASE("zero width gives exactly zero penalty") {
    const auto p = SystemParams::make(16, 1.0);
    const auto r = bob_penalty(p, DsrPolicy::fixed(0.0), 20000, 1);
    CHECK(r.penalty_mc == 0.0);
    CHECK(r.with_dsr.errors == r.without_dsr.errors);
    CHECK(r.penalty_analytic == 0.0);
}

TEST_CASE("analytic dithered error matches an independent quadrature and the MC") {
    const auto p = SystemParams::make(16, 1.0);
    const double delta = pi / 2.0;
    const double analytic = dsr_ber_analytic(p, delta);
    CHECK(analytic == doctest::Approx(quad_oracle(p, delta)).epsilon(1e-8));

    const std::uint64_t n = 200000;
    const auto r = bob_penalty(p, DsrPolicy::fixed(delta), n, 1);
    const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(n));
    CHECK(std::fabs(r.with_dsr.p - analytic) < 3.0 * sigma);
    CHECK(r.analytic_with == doctest::Approx(analytic));
}

TEST_CASE("penalty grows with the dither width") {
    const auto p = SystemParams::make(16, 1.0);
    double prev_analytic = -1.0;
    double prev_mc = -1e9;
    for (double delta : {0.5, 1.5, 2.5}) {
        const auto r = bob_penalty(p, DsrPolicy::fixed(delta), 100000, 2);
        CHECK(r.penalty_analytic > prev_analytic);
        CHECK(r.penalty_mc > prev_mc - 0.003);  // MC trend with slack
        prev_analytic = r.penalty_analytic;
        prev_mc = r.penalty_mc;
    }
}

TEST_CASE("fixed coupling: penalty fades as S grows, visible in MC at g = 30") {
    const auto policy = DsrPolicy::coupled(30.0);
    const auto p_low = SystemParams::make(64, 100.0);
    const auto p_high = SystemParams::make(64, 10000.0);
    const auto low = bob_penalty(p_low, policy, 1000000, 3);
    const auto high = bob_penalty(p_high, policy, 1000000, 3);
    CHECK(low.penalty_mc > 5e-4);   // analytic penalty ~ 1.19e-3
    CHECK(high.penalty_mc == 0.0);  // no visible errors at all
    CHECK(low.penalty_analytic > high.penalty_analytic);
}

TEST_CASE("fixed coupling: analytic penalty vanishes over three decades of S") {
    const auto policy = DsrPolicy::coupled(2.0);
    double prev = 1.0;
    for (double S : {1.0, 10.0, 100.0}) {
        const auto p = SystemParams::make(16, S);
        const double pen = dsr_ber_analytic(p, policy.effective_delta(p)) - bob_ber_analytic(p);
        CHECK(pen < prev);
        prev = pen;
    }
    CHECK(prev < 1e-10);
}

TEST_CASE("log-domain penalty agrees with the linear value where both exist") {
    const auto p = SystemParams::make(16, 4.0);
    const double delta = 0.8;
    const double linear = dsr_ber_analytic(p, delta) - bob_ber_analytic(p);
    const double log10p = dsr_log10_penalty_analytic(p, delta);
    CHECK(std::pow(10.0, log10p) == doctest::Approx(linear).epsilon(1e-6));
    // and stays finite where the linear value underflows
    const auto big = SystemParams::make(1024, 1e4);
    const double lp = dsr_log10_penalty_analytic(big, 2.0 / big.alpha);
    CHECK(std::isfinite(lp));
    CHECK(lp < -300.0);
}

TEST_CASE("nearest power of two") {
    CHECK(nearest_power_of_two(94.25) == 64);
    CHECK(nearest_power_of_two(297.96) == 256);
    CHECK(nearest_power_of_two(942.48) == 1024);
    CHECK(nearest_power_of_two(1.0) == 2);
    CHECK(nearest_power_of_two(3.1) == 4);  // |3.1-4| = 0.9 < |3.1-2| = 1.1
}

TEST_CASE("scaling sweep: penalty falls along S while the wedge count holds") {
    const double s_list[] = {100.0, 1000.0, 10000.0};
    const auto rows = dsr_scaling_experiment(3.0, s_list, 20000, 1);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].M == 64);
    CHECK(rows[1].M == 256);
    CHECK(rows[2].M == 1024);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].log10_bob_penalty < rows[i - 1].log10_bob_penalty);
    for (const auto& r : rows) {
        CHECK(r.eve_gamma >= 1.5);
        CHECK(r.eve_gamma <= 6.0);
    }
}

TEST_CASE("dither widens Eve's wedge only mildly") {
    const auto p = SystemParams::make(256, 1000.0);
    const auto base = gamma_empirical(p, WidthPolicy::standard(), 20000, 4);
    const auto dithered = gamma_empirical(p, WidthPolicy::standard(), 20000, 4, ExecMode::openmp,
                                          2.0 / p.alpha);
    CHECK(dithered.mean < 2.0 * base.mean + 1.0);
    CHECK(dithered.mean > 0.5 * base.mean);
    // zero-width dither degenerates to the baseline exactly
    const auto zero = gamma_empirical(p, WidthPolicy::standard(), 20000, 4, ExecMode::openmp, 0.0);
    CHECK(zero.mean == base.mean);
    CHECK(zero.stddev == base.stddev);
}

TEST_CASE("serial and OpenMP penalty kernels agree exactly") {
    const auto p = SystemParams::make(16, 1.0);
    const auto a = bob_penalty(p, DsrPolicy::fixed(1.0), 50000, 5, ExecMode::serial);
    const auto b = bob_penalty(p, DsrPolicy::fixed(1.0), 50000, 5, ExecMode::openmp);
    CHECK(a.with_dsr.errors == b.with_dsr.errors);
    CHECK(a.without_dsr.errors == b.without_dsr.errors);
}

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "alphaeta/measurement.hpp"
#include "alphaeta/rng.hpp"
#include "alphaeta/stats.hpp"

using namespace aeta;

namespace {

constexpr double pi = std::numbers::pi;

// Truncated number-basis amplitudes of |alpha e^{i theta}>, independent of
// the closed-form overlap used by the implementation.
Eigen::VectorXcd fock_state(double S, double theta, int dim) {
    Eigen::VectorXcd v(dim);
    const std::complex<double> a = std::sqrt(S) * std::exp(std::complex<double>(0.0, theta));
    std::complex<double> term = std::exp(std::complex<double>(-0.5 * S, 0.0));
    for (int n = 0; n < dim; ++n) {
        v(n) = term;
        term *= a / std::sqrt(static_cast<double>(n + 1));
    }
    return v;
}

}  // namespace

TEST_CASE("vacuum heterodyne statistics") {
    const auto p = SystemParams::make(4, 0.0);
    auto eng = rng::make_stream(1, "test-het", 0);
    const int n = 100000;
    double s1 = 0, s2 = 0, q1 = 0, q2 = 0;
    for (int i = 0; i < n; ++i) {
        const auto y = heterodyne_sample(0.0, p, eng);
        s1 += y.y1;
        s2 += y.y2;
        q1 += y.y1 * y.y1;
        q2 += y.y2 * y.y2;
    }
    const double m1 = s1 / n, m2 = s2 / n;
    const double v1 = q1 / n - m1 * m1, v2 = q2 / n - m2 * m2;
    // 3 sigma of the mean and of the variance estimator
    CHECK(std::fabs(m1) < 3.0 * std::sqrt(0.5 / n));
    CHECK(std::fabs(m2) < 3.0 * std::sqrt(0.5 / n));
    CHECK(std::fabs(v1 - 0.5) < 3.0 * 0.5 * std::sqrt(2.0 / (n - 1)));
    CHECK(std::fabs(v2 - 0.5) < 3.0 * 0.5 * std::sqrt(2.0 / (n - 1)));
}

TEST_CASE("heterodyne mean at S = 1e6") {
    const auto p = SystemParams::make(4, 1e6);
    auto eng = rng::make_stream(1, "test-het", 1);
    const int n = 10000;
    double s1 = 0;
    for (int i = 0; i < n; ++i) s1 += heterodyne_sample(0.0, p, eng).y1;
    CHECK(std::fabs(s1 / n - 1000.0) < 3.0 * std::sqrt(0.5) / 100.0);
}

TEST_CASE("heterodyne covariance converges to diag(1/2, 1/2)") {
    const auto p = SystemParams::make(4, 2.0);
    auto eng = rng::make_stream(1, "test-het", 2);
    const int n = 1000000;
    const double mx = p.alpha * std::cos(0.7), my = p.alpha * std::sin(0.7);
    double c11 = 0, c22 = 0, c12 = 0;
    for (int i = 0; i < n; ++i) {
        const auto y = heterodyne_sample(0.7, p, eng);
        c11 += (y.y1 - mx) * (y.y1 - mx);
        c22 += (y.y2 - my) * (y.y2 - my);
        c12 += (y.y1 - mx) * (y.y2 - my);
    }
    CHECK(c11 / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(c22 / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::fabs(c12 / n) < 0.01);
}

TEST_CASE("sampling is deterministic under a fixed stream") {
    const auto p = SystemParams::make(4, 3.0);
    auto e1 = rng::make_stream(42, "x", 0);
    auto e2 = rng::make_stream(42, "x", 0);
    for (int i = 0; i < 16; ++i) {
        const auto a = heterodyne_sample(1.0, p, e1);
        const auto b = heterodyne_sample(1.0, p, e2);
        REQUIRE(a.y1 == b.y1);
        REQUIRE(a.y2 == b.y2);
    }
}

TEST_CASE("homodyne statistics") {
    const auto p = SystemParams::make(4, 4.0);
    auto eng = rng::make_stream(1, "test-hom", 0);
    const int n = 200000;
    double s = 0, q = 0;
    for (int i = 0; i < n; ++i) {
        const double y = homodyne_sample(1.3, 1.3, p, eng);
        s += y;
        q += y * y;
    }
    const double mean = s / n;
    const double var = q / n - mean * mean;
    CHECK(mean == doctest::Approx(2.0).epsilon(0.005));
    CHECK(std::fabs(var - 0.25) < 3.0 * 0.25 * std::sqrt(2.0 / (n - 1)));

    // orthogonal quadrature has zero mean
    double s2 = 0;
    for (int i = 0; i < n; ++i) s2 += homodyne_sample(pi / 2.0, 0.0, p, eng);
    CHECK(std::fabs(s2 / n) < 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));

    // vacuum
    const auto v = SystemParams::make(4, 0.0);
    double s3 = 0;
    for (int i = 0; i < n; ++i) s3 += homodyne_sample(0.3, 0.9, v, eng);
    CHECK(std::fabs(s3 / n) < 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("phase estimation") {
    CHECK(phase_estimate({1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(phase_estimate({0.0, -1.0}) == doctest::Approx(3.0 * pi / 2.0));
    CHECK(phase_estimate({-1.0, 1.0}) == doctest::Approx(3.0 * pi / 4.0));
    CHECK_THROWS_AS((void)phase_estimate({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("coherent overlap closed form") {
    const auto p = SystemParams::make(4, 0.5);
    CHECK(std::abs(coherent_overlap(1.1, 1.1, p)) == doctest::Approx(1.0));
    const auto o = coherent_overlap(0.0, pi, p);
    CHECK(std::norm(o) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    const auto v = SystemParams::make(4, 0.0);
    CHECK(std::abs(coherent_overlap(0.3, 2.7, v)) == doctest::Approx(1.0));
}

TEST_CASE("coherent overlap agrees with a truncated number-basis product") {
    const int dim = 30;
    for (double S : {0.5, 1.0, 2.5}) {
        const auto p = SystemParams::make(4, S);
        for (double t2 : {0.0, 0.7, pi, 4.4}) {
            const auto direct = coherent_overlap(0.2, t2, p);
            const std::complex<double> fock =
                fock_state(S, 0.2, dim).dot(fock_state(S, t2, dim));
            CHECK(std::abs(direct - fock) < 1e-9);
        }
    }
}

TEST_CASE("overlap magnitude is in (0,1] and is 1 only for equal angles") {
    const auto p = SystemParams::make(4, 1.5);
    std::mt19937_64 eng(31);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 300; ++i) {
        const double a = u(eng), b = u(eng);
        const double mag2 = std::norm(coherent_overlap(a, b, p));
        REQUIRE(mag2 > 0.0);
        REQUIRE(mag2 <= 1.0);
        if (angular_distance(a, b) > 1e-6) REQUIRE(mag2 < 1.0);
    }
}

TEST_CASE("binary discrimination bound") {
    CHECK(helstrom_binary_error(SystemParams::make(4, 0.0)) == doctest::Approx(0.5));
    CHECK(helstrom_binary_error(SystemParams::make(4, 0.25)) ==
          doctest::Approx(0.10246995118967495).epsilon(1e-9));
    CHECK(helstrom_binary_error(SystemParams::make(4, 40000.0)) == 0.0);

    // monotone decreasing in S
    double prev = 0.5;
    for (double S : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double pe = helstrom_binary_error(SystemParams::make(4, S));
        CHECK(pe < prev);
        prev = pe;
    }
}

TEST_CASE("binary bound matches the trace-norm computation in a number basis") {
    const int dim = 30;
    for (double S : {0.25, 1.0}) {
        const auto p = SystemParams::make(4, S);
        const auto psi0 = fock_state(S, 0.0, dim);
        const auto psi1 = fock_state(S, pi, dim);
        const Eigen::MatrixXcd diff =
            psi0 * psi0.adjoint() - psi1 * psi1.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
        const double trace_norm = es.eigenvalues().cwiseAbs().sum();
        const double oracle = 0.5 * (1.0 - 0.5 * trace_norm);
        CHECK(helstrom_binary_error(p) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("angular distance") {
    CHECK(angular_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
    CHECK(angular_distance(0.0, pi) == doctest::Approx(pi));
    CHECK(angular_distance(2.2, 2.2) == 0.0);
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i) {
        const double a = u(eng), b = u(eng), c = u(eng);
        REQUIRE(angular_distance(a, b) == doctest::Approx(angular_distance(b, a)));
        REQUIRE(angular_distance(a, c) <=
                angular_distance(a, b) + angular_distance(b, c) + 1e-12);
    }
}

// Wall-clock comparison of the serial reference loops against the OpenMP
// kernels, checking on the way that both produce identical results.

#include <chrono>
#include <cstdio>
#include <string>

#include "alphaeta/adversary.hpp"
#include "alphaeta/dsr.hpp"
#include "alphaeta/jointattack.hpp"
#include "alphaeta/receiver.hpp"
#include "alphaeta/rng.hpp"

using namespace aeta;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class Fn>
double timed(Fn&& fn) {
    const double t0 = now_ms();
    fn();
    return now_ms() - t0;
}

void report(const std::string& name, double serial_ms, double omp_ms, bool match) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   %s\n", name.c_str(), serial_ms, omp_ms,
                serial_ms / omp_ms, match ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main() {
    constexpr std::uint64_t seed = 1;
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        const auto params = SystemParams::make(2048, 40000.0);
        const auto cfg = ExpanderConfig::uniform_config();
        BerEstimate a, b;
        const double ts = timed([&] { a = roundtrip_ber(params, cfg, 1000000, seed, ExecMode::serial); });
        const double tp = timed([&] { b = roundtrip_ber(params, cfg, 1000000, seed, ExecMode::openmp); });
        report("roundtrip_ber 1e6", ts, tp, a.errors == b.errors);
    }
    {
        const auto params = SystemParams::make(2048, 40000.0);
        GammaEstimate a, b;
        const double ts = timed([&] { a = gamma_empirical(params, WidthPolicy::standard(), 200000, seed, ExecMode::serial); });
        const double tp = timed([&] { b = gamma_empirical(params, WidthPolicy::standard(), 200000, seed, ExecMode::openmp); });
        report("gamma_empirical 2e5", ts, tp, a.mean == b.mean && a.stddev == b.stddev);
    }
    {
        const auto params = SystemParams::make(2048, 40000.0);
        stats::Binomial a, b;
        const double ts = timed([&] { a = eve_co_error(params, EveRule::full_ml, 20000, seed, ExecMode::serial); });
        const double tp = timed([&] { b = eve_co_error(params, EveRule::full_ml, 20000, seed, ExecMode::openmp); });
        report("eve_co full_ml 2e4", ts, tp, a.errors == b.errors);
    }
    {
        const auto params = SystemParams::make(16, 25.0);
        const auto spec = LfsrSpec::make(20, {0, 3});
        const auto cfg = ExpanderConfig::lfsr_config(spec);
        auto eng = rng::make_stream(seed, "bench", 0);
        const auto obs = simulate_known_plaintext(params, cfg, 123456, 48, eng);
        const auto wedges = wedges_from_observation(obs, params, WidthPolicy::confidence_level(0.9999));
        AttackReport a, b;
        const double ts = timed([&] { a = assisted_bruteforce(wedges, spec, params, {}, ExecMode::serial); });
        const double tp = timed([&] { b = assisted_bruteforce(wedges, spec, params, {}, ExecMode::openmp); });
        report("assisted_bruteforce |K|=20", ts, tp,
               a.surviving == b.surviving && a.survivors == b.survivors);
    }
    {
        const auto params = SystemParams::make(64, 400.0);
        const auto spec = LfsrSpec::make(20, {0, 3});
        const auto cfg = ExpanderConfig::lfsr_config(spec);
        auto eng = rng::make_stream(seed, "bench", 1);
        const auto obs = simulate_known_plaintext(params, cfg, 654321, 256, eng);
        AttackReport a, b;
        const double ts = timed([&] { a = correlation_attack(obs, spec, params, {}, ExecMode::serial); });
        const double tp = timed([&] { b = correlation_attack(obs, spec, params, {}, ExecMode::openmp); });
        report("correlation_attack |K|=20", ts, tp,
               a.survivors == b.survivors && a.success == b.success);
    }
    {
        const auto params = SystemParams::make(16, 4.0);
        const auto spec = LfsrSpec::make(10, {0, 2});
        BitSeq plaintext(64, 0);
        GramMatrix a, b;
        JointGuard guard{10, false};
        const double ts = timed([&] { a = build_gram(plaintext, spec, params, guard, ExecMode::serial); });
        const double tp = timed([&] { b = build_gram(plaintext, spec, params, guard, ExecMode::openmp); });
        report("build_gram N=1024 n=64", ts, tp, a.entries == b.entries);
    }
    return 0;
}

#include "alphaeta/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphaeta/adversary.hpp"
#include "alphaeta/csv.hpp"
#include "alphaeta/dsr.hpp"
#include "alphaeta/errors.hpp"
#include "alphaeta/jointattack.hpp"
#include "alphaeta/receiver.hpp"
#include "alphaeta/rng.hpp"
#include "alphaeta/version.hpp"

namespace aeta {

namespace {

namespace fs = std::filesystem;

std::string iso_utc_now() {
    const std::time_t tt = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string file_stem(const std::string& subcommand) {
    std::string s = subcommand;
    for (char& c : s)
        if (c == '-') c = '_';
    return s;
}

fs::path write_table(const ResultTable& table, const fs::path& out_dir, const std::string& stem,
                     const std::string& format) {
    const fs::path path = out_dir / (stem + (format == "json" ? ".json" : ".csv"));
    if (format == "json")
        table.write_json(path);
    else
        table.write_csv(path);
    return path;
}

BitSeq plaintext_for_run(const ExperimentConfig& cfg) {
    if (!cfg.run.plaintext.empty()) return bits_from_string(cfg.run.plaintext);
    auto eng = rng::make_stream(cfg.run.master_seed, "encrypt", 0);
    BitSeq bits(cfg.run.slots);
    for (auto& b : bits) b = static_cast<Bit>(eng() & 1u);
    return bits;
}

std::vector<std::uint64_t> attack_n_list(const ExperimentConfig& cfg) {
    if (!cfg.attack.n_list.empty()) return cfg.attack.n_list;
    return {cfg.run.slots};
}

ResultTable run_constellation_dump(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    ResultTable t({"index", "angle_radians", "bit", "basis_z"});
    for (std::uint32_t l = 0; l < 2 * params.M; ++l)
        t.add_row({static_cast<std::uint64_t>(l), index_to_angle(l, params),
                   static_cast<std::uint64_t>(bit_at_index(l, params)),
                   static_cast<std::uint64_t>(l % params.M)});
    return t;
}

ResultTable run_keystream(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    const auto expander = cfg.expander_config();
    const auto symbols = keystream_symbols(cfg.seed_key(), expander, cfg.run.slots, params.M);
    ResultTable t({"slot", "symbol", "bits"});
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        std::string bits;
        for (std::uint32_t j = 0; j < params.m; ++j)
            bits.push_back((symbols[i] >> (params.m - 1 - j)) & 1u ? '1' : '0');
        t.add_row({static_cast<std::uint64_t>(i + 1), static_cast<std::uint64_t>(symbols[i]),
                   bits});
    }
    return t;
}

ResultTable run_encrypt(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    const auto expander = cfg.expander_config();
    const auto plaintext = plaintext_for_run(cfg);
    const auto symbols = keystream_symbols(cfg.seed_key(), expander, plaintext.size(), params.M);
    ResultTable t({"slot", "x", "z", "index", "angle_radians"});
    for (std::size_t i = 0; i < plaintext.size(); ++i) {
        const auto point = map_angle(plaintext[i], symbols[i], params);
        t.add_row({static_cast<std::uint64_t>(i + 1), static_cast<std::uint64_t>(plaintext[i]),
                   static_cast<std::uint64_t>(symbols[i]), static_cast<std::uint64_t>(point.index),
                   point.radians});
    }
    return t;
}

ResultTable run_bob_ber(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    const auto est = roundtrip_ber(params, cfg.expander_config(), cfg.run.trials,
                                   cfg.run.master_seed);
    ResultTable t({"S", "M", "trials", "errors", "ber", "ci_low", "ci_high"});
    t.add_row({params.S, static_cast<std::uint64_t>(params.M), est.trials, est.errors, est.p,
               est.ci_low, est.ci_high});
    return t;
}

ResultTable run_gamma(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    const auto policy = cfg.width_policy();
    const auto est = gamma_empirical(params, policy, cfg.run.trials, cfg.run.master_seed);
    ResultTable t({"M", "S", "width_policy", "width", "trials", "gamma_analytic",
                   "gamma_empirical_mean", "gamma_empirical_std"});
    t.add_row({static_cast<std::uint64_t>(params.M), params.S, policy.name(),
               policy.width(params), est.trials, gamma_analytic(params), est.mean, est.stddev});
    return t;
}

ResultTable run_eve_co(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    ResultTable t({"rule", "S", "M", "trials", "errors", "ber", "ci_low", "ci_high"});
    std::vector<std::pair<std::string, EveRule>> rules;
    if (cfg.attack.rule == "nearest" || cfg.attack.rule == "both")
        rules.emplace_back("nearest", EveRule::nearest_index);
    if (cfg.attack.rule == "ml" || cfg.attack.rule == "both")
        rules.emplace_back("ml", EveRule::full_ml);
    for (const auto& [name, rule] : rules) {
        const auto est = eve_co_error(params, rule, cfg.run.trials, cfg.run.master_seed);
        t.add_row({name, params.S, static_cast<std::uint64_t>(params.M), est.trials, est.errors,
                   est.p, est.ci_low, est.ci_high});
    }
    return t;
}

std::uint64_t seed_mask(std::uint32_t length) {
    return length >= 64 ? ~0ull : (1ull << length) - 1;
}

// One representative full report (run 0 of the largest n), same stream the
// aggregate experiment uses for that run.
AttackReport bruteforce_report_run0(const ExperimentConfig& cfg, std::uint64_t n) {
    const auto params = cfg.system_params();
    const auto expander = cfg.expander_config();
    auto eng = rng::make_stream(cfg.run.master_seed, "bruteforce", 0);
    const std::uint64_t true_seed = eng() & seed_mask(expander.spec.length);
    const auto obs = simulate_known_plaintext(params, expander, true_seed, n, eng);
    const auto wedges = wedges_from_observation(obs, params, cfg.width_policy());
    BruteforceOptions opts;
    opts.guard_bits = cfg.attack.bruteforce_guard;
    opts.force = cfg.attack.force_guards;
    opts.true_seed = true_seed;
    return assisted_bruteforce(wedges, expander.spec, params, opts);
}

ResultTable run_eve_bruteforce(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    const auto expander = cfg.expander_config();
    BruteforceOptions opts;
    opts.guard_bits = cfg.attack.bruteforce_guard;
    opts.force = cfg.attack.force_guards;
    ResultTable t({"n", "runs", "survival_rate", "mean_survivors", "mean_slots_checked", "work"});
    for (std::uint64_t n : attack_n_list(cfg)) {
        const auto ex = bruteforce_experiment(params, expander, cfg.width_policy(), n,
                                              cfg.attack.runs, cfg.run.master_seed, opts);
        t.add_row({n, ex.runs, ex.survival_rate, ex.mean_survivors, ex.mean_slots_checked,
                   static_cast<std::uint64_t>(1) << expander.spec.length});
    }
    return t;
}

AttackReport correlation_report_run0(const ExperimentConfig& cfg, std::uint64_t n) {
    const auto params = cfg.system_params();
    const auto expander = cfg.expander_config();
    auto eng = rng::make_stream(cfg.run.master_seed, "correlation", 0);
    const std::uint64_t true_seed = eng() & seed_mask(expander.spec.length);
    const auto obs = simulate_known_plaintext(params, expander, true_seed, n, eng);
    CorrelationOptions opts;
    opts.msb_count = cfg.attack.msb_count;
    opts.guard_bits = cfg.attack.correlation_guard;
    opts.force = cfg.attack.force_guards;
    return correlation_attack(obs, expander.spec, params, opts);
}

ResultTable run_eve_correlation(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    const auto expander = cfg.expander_config();
    CorrelationOptions opts;
    opts.msb_count = cfg.attack.msb_count;
    opts.guard_bits = cfg.attack.correlation_guard;
    opts.force = cfg.attack.force_guards;
    ResultTable t({"n", "msb_count", "runs", "successes", "success_rate", "mean_msb_error",
                   "work"});
    for (std::uint64_t n : attack_n_list(cfg)) {
        const auto ex = correlation_experiment(params, expander, expander.spec, n,
                                               cfg.attack.runs, cfg.run.master_seed, opts);
        t.add_row({n, static_cast<std::uint64_t>(cfg.attack.msb_count), ex.runs, ex.successes,
                   ex.success_rate, ex.mean_msb_error,
                   static_cast<std::uint64_t>(1) << expander.spec.length});
    }
    return t;
}

ResultTable run_dsr_sweep(const ExperimentConfig& cfg) {
    const auto rows = dsr_scaling_experiment(cfg.dsr.gamma_target, cfg.dsr.s_list, cfg.run.trials,
                                             cfg.run.master_seed, cfg.dsr.coupling_g);
    ResultTable t({"S", "M", "delta", "bob_ber", "bob_penalty", "log10_bob_penalty",
                   "eve_gamma"});
    for (const auto& r : rows)
        t.add_row({r.S, static_cast<std::uint64_t>(r.M), r.delta, r.bob_ber, r.bob_penalty,
                   r.log10_bob_penalty, r.eve_gamma});
    return t;
}

ResultTable run_joint_srm(const ExperimentConfig& cfg) {
    const auto params = cfg.system_params();
    const auto expander = cfg.expander_config();
    JointGuard guard{cfg.attack.joint_guard, cfg.attack.force_guards};
    const auto policy = cfg.joint.plaintext_policy == "random" ? PlaintextPolicy::fixed_random
                                                               : PlaintextPolicy::all_zeros;
    const auto curve = pe_vs_n(expander.spec, params, cfg.joint.n_values, policy,
                               cfg.run.master_seed, guard);
    ResultTable t({"n", "pe"});
    for (const auto& [n, pe] : curve.rows) t.add_row({n, pe});
    return t;
}

void write_manifest(const fs::path& path, const std::string& subcommand,
                    const ExperimentConfig& cfg, const std::string& started,
                    const std::vector<fs::path>& outputs) {
    nlohmann::json j;
    j["artifact_version"] = std::string(kVersion);
    j["subcommand"] = subcommand;
    j["master_seed"] = cfg.run.master_seed;
    j["started_utc"] = started;
    j["finished_utc"] = iso_utc_now();
    j["config"] = nlohmann::json::parse(cfg.to_json_text());
    auto& files = j["outputs"] = nlohmann::json::array();
    for (const auto& p : outputs) files.push_back(p.filename().string());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write manifest: " + path.string());
    f << j.dump(2) << '\n';
}

}  // namespace

RunResult run_subcommand(const std::string& name, const ExperimentConfig& config,
                         const fs::path& out_dir, const std::string& format) {
    if (format != "csv" && format != "json")
        throw ConfigError("format must be 'csv' or 'json', got '" + format + "'");
    config.validate(name);
    fs::create_directories(out_dir);
    const std::string started = iso_utc_now();
    const std::string stem = file_stem(name);

    RunResult result;
    std::optional<ResultTable> table;
    if (name == "constellation-dump")
        table = run_constellation_dump(config);
    else if (name == "keystream")
        table = run_keystream(config);
    else if (name == "encrypt")
        table = run_encrypt(config);
    else if (name == "bob-ber")
        table = run_bob_ber(config);
    else if (name == "gamma")
        table = run_gamma(config);
    else if (name == "eve-co")
        table = run_eve_co(config);
    else if (name == "eve-bruteforce")
        table = run_eve_bruteforce(config);
    else if (name == "eve-correlation")
        table = run_eve_correlation(config);
    else if (name == "dsr-sweep")
        table = run_dsr_sweep(config);
    else if (name == "joint-srm")
        table = run_joint_srm(config);
    else
        throw ConfigError("unknown subcommand '" + name + "'");

    result.outputs.push_back(write_table(*table, out_dir, stem, format));

    // attack runs also persist one full structured report
    if (name == "eve-bruteforce" || name == "eve-correlation") {
        const auto ns = attack_n_list(config);
        const std::uint64_t n_max = *std::max_element(ns.begin(), ns.end());
        const AttackReport rep = name == "eve-bruteforce"
                                     ? bruteforce_report_run0(config, n_max)
                                     : correlation_report_run0(config, n_max);
        const fs::path rp = out_dir / (stem + "_report.json");
        std::ofstream f(rp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write report: " + rp.string());
        f << rep.to_json() << '\n';
        result.outputs.push_back(rp);
    }
    if (name == "joint-srm" && config.joint.dump_gram) {
        const auto params = config.system_params();
        const auto expander = config.expander_config();
        JointGuard guard{config.attack.joint_guard, config.attack.force_guards};
        const auto ns = config.joint.n_values;
        const std::uint64_t n_max = *std::max_element(ns.begin(), ns.end());
        BitSeq plaintext(n_max, 0);
        if (config.joint.plaintext_policy == "random") {
            auto eng = rng::make_stream(config.run.master_seed, "joint", 0);
            for (auto& b : plaintext) b = static_cast<Bit>(eng() & 1u);
        }
        const auto gram = build_gram(plaintext, expander.spec, params, guard);
        const fs::path gp = out_dir / (stem + "_gram.bin");
        write_gram_binary(gram, gp);
        result.outputs.push_back(gp);
    }

    result.manifest = out_dir / (stem + "_manifest.json");
    write_manifest(result.manifest, name, config, started, result.outputs);
    return result;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"alphaeta: coherent-state stream-cipher simulator and attack bench"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    struct Common {
        std::string config_path;
        std::string out_dir = "results";
        std::string format = "csv";
        std::vector<std::string> overrides;
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> trials;
    } common;

    const std::map<std::string, std::string> descriptions = {
        {"constellation-dump", "emit the 2M grid points with their bits and bases"},
        {"keystream", "expand the configured seed into keystream symbols"},
        {"encrypt", "map a plaintext onto transmitted phase angles"},
        {"bob-ber", "Monte Carlo bit error rate of the keyed receiver"},
        {"gamma", "analytic and empirical per-slot keystream ambiguity"},
        {"eve-co", "ciphertext-only bit error of the unkeyed adversary"},
        {"eve-bruteforce", "wedge-constrained exhaustive seed search"},
        {"eve-correlation", "linear decoding of the seed from noisy symbol estimates"},
        {"dsr-sweep", "signal-randomization scaling run over an S list"},
        {"joint-srm", "collective-measurement error of the seed ensemble vs data length"},
    };
    for (const auto& name : kSubcommands) {
        auto* sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--config", common.config_path, "configuration file (.cfg or .json)");
        sub->add_option("--seed", common.seed, "master seed (overrides run.master_seed)");
        sub->add_option("--trials", common.trials, "trial count (overrides run.trials)");
        sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option("--format", common.format, "result format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--override", common.overrides,
                        "config override as section.key=value (repeatable)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig config = common.config_path.empty()
                                      ? ExperimentConfig{}
                                      : ExperimentConfig::load(common.config_path);
        for (const auto& ov : common.overrides) config.apply_override(ov);
        if (common.seed) config.run.master_seed = *common.seed;
        if (common.trials) config.run.trials = *common.trials;

        const std::string name = app.get_subcommands().front()->get_name();
        const auto result = run_subcommand(name, config, common.out_dir, common.format);
        for (const auto& p : result.outputs) std::cout << "wrote " << p.string() << '\n';
        std::cout << "wrote " << result.manifest.string() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "guard violation: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace aeta

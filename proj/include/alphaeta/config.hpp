#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "alphaeta/adversary.hpp"
#include "alphaeta/constellation.hpp"
#include "alphaeta/dsr.hpp"
#include "alphaeta/jointattack.hpp"
#include "alphaeta/keystream.hpp"

namespace aeta {

/// Experiment configuration. File format is either flat INI-style sections
/// of key = value lines, or the equivalent nested JSON object; overrides
/// take "section.key=value". Every guard is validated up front with an
/// actionable message.
struct ExperimentConfig {
    struct System {
        std::uint32_t M = 16;
        double S = 4.0;
    } system;

    struct Expander {
        std::string kind = "lfsr";  // lfsr | uniform
        std::uint32_t key_bits = 16;
        std::vector<std::uint32_t> taps = {0, 4, 13, 15};
        bool nonlinear_filter = false;
        std::uint64_t seed_key = 1;  // register init: bit j = cell j
    } expander;

    struct Attack {
        std::string width_policy = "standard";  // standard | confidence
        double confidence = 0.9999;
        std::uint32_t msb_count = 1;
        std::vector<std::uint64_t> n_list;  // slot counts; empty = {run.slots}
        std::uint64_t runs = 100;
        std::uint32_t bruteforce_guard = 28;
        std::uint32_t correlation_guard = 24;
        std::uint32_t joint_guard = 12;
        bool force_guards = false;
        std::string rule = "both";  // nearest | ml | both
    } attack;

    struct Dsr {
        double delta = 0.0;
        bool couple_delta = false;
        double coupling_g = 2.0;
        double gamma_target = 3.0;
        std::vector<double> s_list = {100.0, 1000.0, 10000.0};
    } dsr;

    struct Joint {
        std::vector<std::uint64_t> n_values = {0, 1, 2, 4, 8, 16, 32, 64, 128, 256};
        std::string plaintext_policy = "zeros";  // zeros | random
        bool dump_gram = false;
    } joint;

    struct Run {
        std::uint64_t trials = 100000;
        std::uint64_t slots = 64;
        std::string plaintext;  // optional ASCII bits for `encrypt`
        std::uint64_t master_seed = 1;
    } run;

    static ExperimentConfig load(const std::filesystem::path& path);
    static ExperimentConfig from_ini_text(const std::string& text);
    static ExperimentConfig from_json_text(const std::string& text);

    std::string to_json_text(int indent = 2) const;

    void apply_override(const std::string& keyval);  // "section.key=value"

    /// Cross-field checks for one subcommand; throws ConfigError.
    void validate(const std::string& subcommand) const;

    // typed views
    SystemParams system_params() const;
    ExpanderConfig expander_config() const;
    WidthPolicy width_policy() const;
    DsrPolicy dsr_policy() const;
    SeedKey seed_key() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace aeta

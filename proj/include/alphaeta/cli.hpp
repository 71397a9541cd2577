#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "alphaeta/config.hpp"

namespace aeta {

inline const std::vector<std::string> kSubcommands = {
    "constellation-dump", "keystream", "encrypt", "bob-ber", "gamma",
    "eve-co", "eve-bruteforce", "eve-correlation", "dsr-sweep", "joint-srm"};

struct RunResult {
    std::vector<std::filesystem::path> outputs;  // result files, manifest excluded
    std::filesystem::path manifest;
};

/// Executes one subcommand: runs the experiment, writes result files in the
/// chosen format plus a run manifest, and returns the file list. Results are
/// byte-identical for identical (config, master seed); only the manifest
/// carries timestamps.
RunResult run_subcommand(const std::string& name, const ExperimentConfig& config,
                         const std::filesystem::path& out_dir, const std::string& format = "csv");

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 2 config error, 3 guard violation, 4 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace aeta

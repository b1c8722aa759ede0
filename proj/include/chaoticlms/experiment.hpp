#pragma once

// Reproducible experiment harness: a small key-value config format with
// [run NAME] sections, preset resolution, and a runner that writes CSV
// reports, optional SVG plots, and a manifest of produced artifacts.
//
// Config schema (estimate command), all keys optional unless noted:
//   command  = estimate | stats       (default estimate)
//   seed     = <uint64>               master seed (default 1)
//   plot     = 0 | 1                  (default 1)
//   m, steps, noise_std
//   channel_feedforward = <floats>    (default "1")
//   channel_feedback    = <floats>    (default none, H = 1)
//   [run NAME] sections, each inheriting the top-level keys:
//     drive = gaussian | chaotic_raw | chaotic_centered | external
//     lambda = <float>                constant schedule
//     lambda_switch = s0:l0 s1:l1 ...  switched schedule
//     lambda_modulated = <base> <gain> modulated by `signal`
//     signal = synthetic | <path>     modulation / external drive source
//     signal_len = <count>            synthetic signal length
//     mu = <float> | normalized | max | max*<scale>
//     x0, burn_in, drive_std, seed, expect_divergence
//
// Stats command keys: moments, autocorr, centered, histogram, bifurcation,
// bif_steps, bif_settle, bif_keep, samples, orbit, self_check, x0, burn_in.
//
// Exit-code contract: 0 ok, 1 oracle mismatch (self-check), 2 usage/config
// error (thrown as ConfigError), 3 unexpected divergence.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoticlms/adaptive.hpp"

namespace chaoticlms {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunSpec {
    std::string name;
    EstimationConfig config;
    bool expect_divergence = false;
};

struct StatsRequest {
    std::optional<unsigned> moments;
    std::optional<std::size_t> autocorr;
    bool centered = false;
    std::optional<std::size_t> histogram_bins;
    bool bifurcation = false;
    std::size_t bif_steps = 480;
    std::size_t bif_settle = 1000;
    std::size_t bif_keep = 60;
    std::optional<std::size_t> orbit_export;
    std::size_t samples = 1000000;
    std::uint64_t seed = 1;
    double x0 = std::numeric_limits<double>::quiet_NaN(); // NaN: derive from seed
    std::size_t burn_in = kDefaultBurnIn;
    bool self_check = false;
};

struct ExperimentConfig {
    enum class Command { estimate, stats };
    Command command = Command::estimate;
    std::string name = "experiment";
    bool plot = true;
    std::vector<RunSpec> runs; // estimate
    StatsRequest stats;        // stats
};

// Initial condition derived from a seed, kept away from the interval ends.
double derive_initial_condition(std::uint64_t seed);

ExperimentConfig parse_config_file(const std::string& path,
                                   std::optional<std::uint64_t> master_seed_override = {});
ExperimentConfig parse_config_text(const std::string& text, const std::string& name,
                                   std::optional<std::uint64_t> master_seed_override = {});

// Preset name or path -> config file path (cwd presets/, $CHAOTICLMS_PRESET_DIR,
// then the directory baked in at build time).
std::string resolve_preset(const std::string& name_or_path);

// Runs the experiment, writing all artifacts under out_dir.
// Returns 0, 1 (self-check mismatch) or 3 (unexpected divergence).
int run_experiment(const ExperimentConfig& config, const std::string& out_dir);

} // namespace chaoticlms

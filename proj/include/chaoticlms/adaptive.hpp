#pragma once

// Time-domain channel-estimation loop: IIR reference channel, FIR adaptive
// filter with LMS tap updates, drive-signal sources (chaotic raw/zero-mean,
// white Gaussian, external file or synthetic), and model-misadjustment
// traces ||a_i - b||^2.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "chaoticlms/logistic.hpp"

namespace chaoticlms {

// H(z) = (sum_k ff[k] z^-k) / (1 + sum_k fb[k] z^-(k+1)).
// Construction verifies that all poles lie strictly inside the unit circle
// (Schur-Cohn recursion on the denominator).
struct IirChannel {
    std::vector<double> feedforward; // numerator, b0 first
    std::vector<double> feedback;    // denominator after the implicit leading 1

    IirChannel(std::vector<double> ff, std::vector<double> fb);
};

// True for a stable denominator 1 + sum fb[k] z^-(k+1).
bool denominator_stable(std::span<const double> feedback);

// First `length` samples of the channel's impulse response (the FIR
// truncation used as the reference tap vector b).
std::vector<double> impulse_response(const IirChannel& channel, std::size_t length);

// Full IIR response to `input`, noiseless.
std::vector<double> channel_response(const IirChannel& channel, std::span<const double> input);

// Full IIR response plus additive white Gaussian measurement noise.
std::vector<double> channel_output(const IirChannel& channel, std::span<const double> input,
                                   double noise_std, std::uint64_t noise_seed);

// Everything the LMS recurrence carries between steps. The window holds the
// last m+1 drive samples, most recent first.
struct LmsState {
    std::vector<double> taps;
    std::vector<double> window;
    double mu = 0.0;
    bool normalized_mu = false; // per-step mu = 1 / ||x||^2
    std::size_t step = 0;
    bool diverged = false; // ||a|| exceeded 1e12
};

LmsState make_lms_state(std::size_t m, double mu, bool normalized_mu = false);

// Shift x_new into the window, compute e = r - a^T x, update a += mu e x.
// Returns e. Sets the diverged flag once ||a|| passes 1e12.
double lms_step(LmsState& state, double x_new, double r);

// n standard-normal deviates scaled by stddev (Box-Muller over splitmix64).
std::vector<double> gaussian_source(std::uint64_t seed, std::size_t n, double stddev);

// Text file, one decimal sample per line; rescaled so max |s| = 1.
std::vector<double> load_external_signal(const std::string& path);

// Reproducible stand-in for a recorded voice signal: three incommensurate
// sinusoids under a slow amplitude envelope, normalized to max |s| = 1
// exactly. Nominal 8 kHz sample indexing.
std::vector<double> synthetic_speech(std::size_t n);

struct DriveSource {
    enum class Kind { chaotic_raw, chaotic_centered, gaussian_white, external };

    Kind kind = Kind::chaotic_centered;
    // chaotic drives
    LambdaSchedule schedule = LambdaSchedule::constant(4.0);
    double x0 = std::numeric_limits<double>::quiet_NaN(); // NaN: derive from seed
    std::size_t burn_in = kDefaultBurnIn;
    // gaussian drive; NaN: sqrt(1/8), matching the zero-mean chaotic power
    double stddev = std::numeric_limits<double>::quiet_NaN();
    // external drive; empty path: synthetic_speech
    std::string path;

    std::string describe() const;
};

// Materialize n drive samples for a given run seed. degenerate (optional)
// reports fixed-point collapse of a chaotic drive.
std::vector<double> make_drive(const DriveSource& source, std::size_t n, std::uint64_t seed,
                               bool* degenerate = nullptr);

// Step-size policy: fixed value, per-step 1/||x||^2, or a multiple of the
// fluctuation bound 16/(3+2m).
struct MuSpec {
    enum class Kind { value, normalized, max_stable };
    Kind kind = Kind::max_stable;
    double value = 1.0; // fixed value, or multiplier on the bound
    static MuSpec fixed(double v) { return {Kind::value, v}; }
    static MuSpec normalized() { return {Kind::normalized, 0.0}; }
    static MuSpec max_stable(double scale = 1.0) { return {Kind::max_stable, scale}; }
    double resolve(std::size_t m) const;
    std::string describe(std::size_t m) const;
};

struct EstimationConfig {
    DriveSource drive;
    IirChannel channel{{1.0}, {}};
    std::size_t m = 128;
    MuSpec mu;
    std::size_t steps = 2000;
    double noise_std = 0.0;
    std::uint64_t seed = 1;
};

struct MmaTrace {
    std::vector<double> mma; // mma[i] = ||a_i - b||^2, mma[0] = ||b||^2
    bool diverged = false;
    std::size_t diverged_step = 0;
    double mu_used = 0.0; // resolved mu (0 when per-step normalized)
    // config snapshot
    std::string drive_desc;
    std::size_t m = 0;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
    bool drive_degenerate = false;
};

// Run the full loop: b = impulse_response(channel, m+1), a_0 = 0, LMS against
// the exact IIR output (the FIR truncation residuum arises naturally), MMA
// recorded every step. On divergence the trace is truncated and flagged.
MmaTrace run_estimation(const EstimationConfig& config);

// Independent runs with per-seed substreams, executed in parallel; results
// do not depend on scheduling.
std::vector<MmaTrace> run_ensemble(const EstimationConfig& base,
                                   std::span<const std::uint64_t> seeds);

} // namespace chaoticlms

#include "chaoticlms/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chaoticlms/rng.hpp"

namespace chaoticlms {

namespace {

constexpr double kDivergenceNormSq = 1e24; // ||a|| > 1e12

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

bool denominator_stable(std::span<const double> feedback) {
    // Schur-Cohn: reflect the polynomial 1 + fb[0] z^-1 + ... down one degree
    // at a time; stable iff every reflection coefficient has magnitude < 1.
    std::vector<double> a(feedback.begin(), feedback.end());
    while (!a.empty()) {
        const double k = a.back();
        if (!(std::fabs(k) < 1.0)) return false;
        const std::size_t n = a.size() - 1;
        std::vector<double> next(n);
        const double d = 1.0 - k * k;
        for (std::size_t i = 0; i < n; ++i) next[i] = (a[i] - k * a[n - 1 - i]) / d;
        a = std::move(next);
    }
    return true;
}

IirChannel::IirChannel(std::vector<double> ff, std::vector<double> fb)
    : feedforward(std::move(ff)), feedback(std::move(fb)) {
    if (feedforward.empty())
        throw std::invalid_argument("IirChannel: feedforward coefficients required");
    for (double v : feedforward)
        if (!std::isfinite(v)) throw std::invalid_argument("IirChannel: non-finite coefficient");
    for (double v : feedback)
        if (!std::isfinite(v)) throw std::invalid_argument("IirChannel: non-finite coefficient");
    if (!denominator_stable(feedback))
        throw std::domain_error("IirChannel: poles not strictly inside the unit circle");
}

std::vector<double> impulse_response(const IirChannel& channel, std::size_t length) {
    if (length < 1) throw std::invalid_argument("impulse_response: length must be >= 1");
    std::vector<double> impulse(length, 0.0);
    impulse[0] = 1.0;
    return channel_response(channel, impulse);
}

std::vector<double> channel_response(const IirChannel& channel, std::span<const double> input) {
    const auto& ff = channel.feedforward;
    const auto& fb = channel.feedback;
    std::vector<double> y(input.size(), 0.0);
    for (std::size_t n = 0; n < input.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < ff.size() && k <= n; ++k) acc += ff[k] * input[n - k];
        for (std::size_t k = 0; k < fb.size() && k + 1 <= n; ++k) acc -= fb[k] * y[n - k - 1];
        y[n] = acc;
    }
    return y;
}

std::vector<double> channel_output(const IirChannel& channel, std::span<const double> input,
                                   double noise_std, std::uint64_t noise_seed) {
    auto y = channel_response(channel, input);
    if (noise_std > 0.0) {
        SplitMix64 rng(noise_seed);
        GaussianBoxMuller gauss;
        for (auto& v : y) v += noise_std * gauss(rng);
    }
    return y;
}

LmsState make_lms_state(std::size_t m, double mu, bool normalized_mu) {
    LmsState s;
    s.taps.assign(m + 1, 0.0);
    s.window.assign(m + 1, 0.0);
    s.mu = mu;
    s.normalized_mu = normalized_mu;
    return s;
}

double lms_step(LmsState& state, double x_new, double r) {
    auto& w = state.window;
    for (std::size_t i = w.size(); i-- > 1;) w[i] = w[i - 1];
    w[0] = x_new;

    double mu = state.mu;
    if (state.normalized_mu) {
        const double energy = dot(w, w);
        mu = energy > 0.0 ? 1.0 / energy : 0.0;
    }

    const double e = r - dot(state.taps, w);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        state.taps[i] += mu * e * w[i];
        norm_sq += state.taps[i] * state.taps[i];
    }
    if (!(norm_sq <= kDivergenceNormSq)) state.diverged = true;
    ++state.step;
    return e;
}

std::vector<double> gaussian_source(std::uint64_t seed, std::size_t n, double stddev) {
    if (!(stddev > 0.0)) throw std::domain_error("gaussian_source: stddev must be > 0");
    SplitMix64 rng(seed);
    GaussianBoxMuller gauss;
    std::vector<double> out(n);
    for (auto& v : out) v = stddev * gauss(rng);
    return out;
}

std::vector<double> load_external_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_external_signal: cannot open " + path);
    std::vector<double> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip whitespace; skip blank lines
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            samples.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error("load_external_signal: parse error at " + path + ":" +
                                     std::to_string(lineno));
        }
    }
    if (samples.empty()) throw std::runtime_error("load_external_signal: empty file " + path);
    double peak = 0.0;
    for (double v : samples) peak = std::max(peak, std::fabs(v));
    if (peak == 0.0)
        throw std::runtime_error("load_external_signal: all-zero signal cannot be normalized");
    for (auto& v : samples) v /= peak;
    return samples;
}

std::vector<double> synthetic_speech(std::size_t n) {
    if (n == 0) return {};
    std::vector<double> s(n);
    // three incommensurate tones under a slow burst-like envelope, 8 kHz grid
    constexpr double f1 = 271.0 / 8000.0, f2 = 661.0 / 8000.0, f3 = 1223.0 / 8000.0;
    constexpr double twopi = 6.283185307179586476925287;
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        const double env =
            0.15 + 0.85 * std::fabs(std::sin(twopi * 2.1 * t / 8000.0) *
                                    std::sin(twopi * 0.37 * t / 8000.0));
        const double v = env * (0.55 * std::sin(twopi * f1 * t) + 0.30 * std::sin(twopi * f2 * t + 0.9) +
                                0.15 * std::sin(twopi * f3 * t + 2.2));
        s[i] = v;
        peak = std::max(peak, std::fabs(v));
    }
    for (auto& v : s) v /= peak;
    return s;
}

std::string DriveSource::describe() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::chaotic_raw:
        os << "chaotic_raw " << schedule.describe();
        break;
    case Kind::chaotic_centered:
        os << "chaotic_centered " << schedule.describe();
        break;
    case Kind::gaussian_white:
        os << "gaussian_white std=" << (std::isnan(stddev) ? std::sqrt(0.125) : stddev);
        break;
    case Kind::external:
        os << "external " << (path.empty() ? std::string("synthetic") : path);
        break;
    }
    return os.str();
}

namespace {

// Substream channels of a run seed.
enum : std::uint64_t { kStreamDrive = 0, kStreamNoise = 1, kStreamX0 = 2 };

double derive_x0(std::uint64_t seed) {
    SplitMix64 rng(substream_seed(seed, kStreamX0));
    return 0.01 + 0.98 * rng.uniform01();
}

} // namespace

std::vector<double> make_drive(const DriveSource& source, std::size_t n, std::uint64_t seed,
                               bool* degenerate) {
    if (degenerate) *degenerate = false;
    switch (source.kind) {
    case DriveSource::Kind::chaotic_raw:
    case DriveSource::Kind::chaotic_centered: {
        LogisticParams params;
        params.x0 = std::isnan(source.x0) ? derive_x0(seed) : source.x0;
        params.burn_in = source.burn_in;
        Orbit orbit = generate_orbit(params, n, source.schedule);
        if (degenerate) *degenerate = orbit.degenerate();
        if (source.kind == DriveSource::Kind::chaotic_centered) orbit = center(orbit);
        return orbit.values();
    }
    case DriveSource::Kind::gaussian_white: {
        const double std = std::isnan(source.stddev) ? std::sqrt(0.125) : source.stddev;
        return gaussian_source(substream_seed(seed, kStreamDrive), n, std);
    }
    case DriveSource::Kind::external: {
        std::vector<double> sig =
            source.path.empty() ? synthetic_speech(n) : load_external_signal(source.path);
        if (sig.size() < n) {
            // repeat cyclically to cover the requested length
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = sig[i % sig.size()];
            return out;
        }
        sig.resize(n);
        return sig;
    }
    }
    throw std::logic_error("make_drive: unknown drive kind");
}

double MuSpec::resolve(std::size_t m) const {
    switch (kind) {
    case Kind::value:
        return value;
    case Kind::normalized:
        return 0.0;
    case Kind::max_stable:
        return value * 16.0 / static_cast<double>(3 + 2 * m);
    }
    return 0.0;
}

std::string MuSpec::describe(std::size_t m) const {
    std::ostringstream os;
    switch (kind) {
    case Kind::value:
        os << value;
        break;
    case Kind::normalized:
        os << "normalized";
        break;
    case Kind::max_stable:
        os << value << "*max=" << resolve(m);
        break;
    }
    return os.str();
}

MmaTrace run_estimation(const EstimationConfig& config) {
    if (config.steps < 1) throw std::invalid_argument("run_estimation: steps must be >= 1");
    const std::size_t m = config.m;

    const bool normalized = config.mu.kind == MuSpec::Kind::normalized;
    const double mu = config.mu.resolve(m);
    if (!normalized && !(mu > 0.0))
        throw std::domain_error("run_estimation: mu must be > 0");

    const auto b = impulse_response(config.channel, m + 1);

    MmaTrace trace;
    trace.mu_used = mu;
    trace.drive_desc = config.drive.describe();
    trace.m = m;
    trace.noise_std = config.noise_std;
    trace.seed = config.seed;

    // m lead-in samples fill the window before adaptation begins, so the
    // first update already sees a full window (no cold-start kick in the
    // normalized-mu policy). The schedule is delayed by the lead-in, which
    // keeps switch/modulation indices aligned with adaptation steps.
    DriveSource source = config.drive;
    if (source.kind == DriveSource::Kind::chaotic_raw ||
        source.kind == DriveSource::Kind::chaotic_centered)
        source.schedule = source.schedule.delayed(m);
    const std::size_t total = config.steps + m;
    const auto drive = make_drive(source, total, config.seed, &trace.drive_degenerate);
    const auto received = channel_output(config.channel, drive, config.noise_std,
                                         substream_seed(config.seed, kStreamNoise));

    LmsState state = make_lms_state(m, mu, normalized);
    for (std::size_t j = 0; j < m; ++j) state.window[j] = drive[m - 1 - j];

    trace.mma.reserve(config.steps + 1);
    double m0 = 0.0;
    for (double v : b) m0 += v * v;
    trace.mma.push_back(m0);

    for (std::size_t k = 0; k < config.steps; ++k) {
        lms_step(state, drive[m + k], received[m + k]);
        double dist = 0.0;
        for (std::size_t i = 0; i <= m; ++i) {
            const double d = state.taps[i] - b[i];
            dist += d * d;
        }
        trace.mma.push_back(dist);
        if (state.diverged) {
            trace.diverged = true;
            trace.diverged_step = k + 1;
            break;
        }
    }
    return trace;
}

std::vector<MmaTrace> run_ensemble(const EstimationConfig& base,
                                   std::span<const std::uint64_t> seeds) {
    std::vector<MmaTrace> traces(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(seeds.size()); ++i) {
        EstimationConfig cfg = base;
        cfg.seed = seeds[i];
        traces[i] = run_estimation(cfg);
    }
    return traces;
}

} // namespace chaoticlms

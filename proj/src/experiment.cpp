#include "chaoticlms/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "chaoticlms/csv.hpp"
#include "chaoticlms/reports.hpp"
#include "chaoticlms/rng.hpp"
#include "chaoticlms/svg_plot.hpp"

#ifndef CHAOTICLMS_SOURCE_PRESET_DIR
#define CHAOTICLMS_SOURCE_PRESET_DIR ""
#endif

namespace chaoticlms {

double derive_initial_condition(std::uint64_t seed) {
    SplitMix64 rng(substream_seed(seed, 2));
    return 0.01 + 0.98 * rng.uniform01();
}

namespace {

using KeyValues = std::map<std::string, std::string>;

struct RawConfig {
    KeyValues top;
    std::vector<std::pair<std::string, KeyValues>> runs;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

RawConfig tokenize(const std::string& text, const std::string& origin) {
    RawConfig raw;
    KeyValues* current = &raw.top;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section");
            std::string inner = trim(line.substr(1, line.size() - 2));
            if (inner.rfind("run", 0) != 0 ||
                (inner.size() > 3 && inner[3] != ' ' && inner[3] != '\t'))
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": only [run NAME] sections are supported");
            std::string name = trim(inner.size() > 3 ? inner.substr(3) : "");
            if (name.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": run needs a name");
            raw.runs.emplace_back(name, KeyValues{});
            current = &raw.runs.back().second;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        if (current->count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key " + key);
        (*current)[key] = value;
    }
    return raw;
}

const std::vector<std::string> kEstimateKeys = {
    "command", "seed",   "plot",      "m",         "steps",     "noise_std",
    "channel_feedforward", "channel_feedback", "drive", "lambda", "lambda_switch",
    "lambda_modulated", "signal", "signal_len", "mu", "x0", "burn_in", "drive_std",
    "expect_divergence"};

const std::vector<std::string> kStatsKeys = {
    "command", "seed",   "plot",    "moments",   "autocorr",  "centered", "histogram",
    "bifurcation", "bif_steps", "bif_settle", "bif_keep", "samples", "orbit",
    "self_check", "x0", "burn_in"};

void check_keys(const KeyValues& kv, const std::vector<std::string>& allowed,
                const std::string& where) {
    for (const auto& [k, v] : kv) {
        (void)v;
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError(where + ": unknown key '" + k + "'");
    }
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        if (v.empty() || v[0] == '-') throw std::invalid_argument(v); // stoull wraps negatives
        std::size_t used = 0;
        const unsigned long long u = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ConfigError("invalid count for " + key + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ConfigError("invalid flag for " + key + ": '" + v + "'");
}

std::vector<double> parse_doubles(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) out.push_back(parse_double(tok, key));
    if (out.empty()) throw ConfigError("no values for " + key);
    return out;
}

// merged lookup: run section first, then top level
struct Lookup {
    const KeyValues& top;
    const KeyValues& run;
    const std::string* find(const std::string& key) const {
        if (auto it = run.find(key); it != run.end()) return &it->second;
        if (auto it = top.find(key); it != top.end()) return &it->second;
        return nullptr;
    }
};

MuSpec parse_mu(const std::string& v) {
    if (v == "normalized") return MuSpec::normalized();
    if (v == "max") return MuSpec::max_stable();
    if (v.rfind("max*", 0) == 0) return MuSpec::max_stable(parse_double(v.substr(4), "mu"));
    return MuSpec::fixed(parse_double(v, "mu"));
}

LambdaSchedule parse_schedule(const Lookup& kv, std::size_t want_len) {
    const std::string* constant = kv.find("lambda");
    const std::string* switched = kv.find("lambda_switch");
    const std::string* modulated = kv.find("lambda_modulated");
    const int given = (constant != nullptr) + (switched != nullptr) + (modulated != nullptr);
    if (given > 1)
        throw ConfigError("give at most one of lambda, lambda_switch, lambda_modulated");
    try {
        if (switched) {
            std::vector<LambdaSchedule::Segment> segments;
            std::istringstream in(*switched);
            std::string tok;
            while (in >> tok) {
                const auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw ConfigError("lambda_switch entries must look like START:LAMBDA");
                segments.push_back({parse_u64(tok.substr(0, colon), "lambda_switch"),
                                    parse_double(tok.substr(colon + 1), "lambda_switch")});
            }
            return LambdaSchedule::switched(std::move(segments));
        }
        if (modulated) {
            const auto parts = parse_doubles(*modulated, "lambda_modulated");
            if (parts.size() != 2)
                throw ConfigError("lambda_modulated needs exactly: <base> <gain>");
            std::vector<double> signal;
            const std::string* sig = kv.find("signal");
            if (!sig || *sig == "synthetic") {
                std::size_t len = want_len;
                if (const std::string* sl = kv.find("signal_len"))
                    len = parse_u64(*sl, "signal_len");
                signal = synthetic_speech(std::max<std::size_t>(len, 1));
            } else {
                signal = load_external_signal(*sig);
            }
            return LambdaSchedule::modulated(parts[0], parts[1], std::move(signal));
        }
        return LambdaSchedule::constant(constant ? parse_double(*constant, "lambda") : 4.0);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid schedule: ") + e.what());
    }
}

RunSpec build_run(const std::string& name, const KeyValues& top, const KeyValues& run,
                  std::uint64_t master_seed, std::size_t index) {
    Lookup kv{top, run};
    RunSpec spec;
    spec.name = name;

    EstimationConfig cfg;
    if (const auto* v = kv.find("m")) cfg.m = parse_u64(*v, "m");
    if (const auto* v = kv.find("steps")) cfg.steps = parse_u64(*v, "steps");
    if (const auto* v = kv.find("noise_std")) cfg.noise_std = parse_double(*v, "noise_std");
    if (const auto* v = kv.find("mu")) cfg.mu = parse_mu(*v);

    std::vector<double> ff = {1.0};
    std::vector<double> fb;
    if (const auto* v = kv.find("channel_feedforward")) ff = parse_doubles(*v, "channel_feedforward");
    if (const auto* v = kv.find("channel_feedback")) fb = parse_doubles(*v, "channel_feedback");
    try {
        cfg.channel = IirChannel(std::move(ff), std::move(fb));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid channel: ") + e.what());
    }

    DriveSource drive;
    const std::string* kind = kv.find("drive");
    if (!kind) throw ConfigError("run '" + name + "': missing drive kind");
    if (*kind == "gaussian")
        drive.kind = DriveSource::Kind::gaussian_white;
    else if (*kind == "chaotic_raw")
        drive.kind = DriveSource::Kind::chaotic_raw;
    else if (*kind == "chaotic_centered")
        drive.kind = DriveSource::Kind::chaotic_centered;
    else if (*kind == "external")
        drive.kind = DriveSource::Kind::external;
    else
        throw ConfigError("run '" + name + "': unknown drive '" + *kind + "'");

    if (drive.kind == DriveSource::Kind::chaotic_raw ||
        drive.kind == DriveSource::Kind::chaotic_centered) {
        drive.schedule = parse_schedule(kv, cfg.steps + cfg.m);
        if (const auto* v = kv.find("x0")) drive.x0 = parse_double(*v, "x0");
        if (const auto* v = kv.find("burn_in")) drive.burn_in = parse_u64(*v, "burn_in");
    }
    if (drive.kind == DriveSource::Kind::gaussian_white) {
        if (const auto* v = kv.find("drive_std")) drive.stddev = parse_double(*v, "drive_std");
    }
    if (drive.kind == DriveSource::Kind::external) {
        if (const auto* v = kv.find("signal"); v && *v != "synthetic") drive.path = *v;
    }
    cfg.drive = drive;

    if (const auto* v = run.count("seed") ? &run.at("seed") : nullptr)
        cfg.seed = parse_u64(*v, "seed");
    else
        cfg.seed = substream_seed(master_seed, index);

    spec.config = std::move(cfg);
    if (const auto* v = kv.find("expect_divergence"))
        spec.expect_divergence = parse_bool(*v, "expect_divergence");
    return spec;
}

StatsRequest build_stats(const KeyValues& top, std::uint64_t master_seed) {
    StatsRequest st;
    st.seed = master_seed;
    auto find = [&](const char* k) -> const std::string* {
        auto it = top.find(k);
        return it == top.end() ? nullptr : &it->second;
    };
    if (const auto* v = find("moments")) st.moments = static_cast<unsigned>(parse_u64(*v, "moments"));
    if (const auto* v = find("autocorr")) st.autocorr = parse_u64(*v, "autocorr");
    if (const auto* v = find("centered")) st.centered = parse_bool(*v, "centered");
    if (const auto* v = find("histogram")) st.histogram_bins = parse_u64(*v, "histogram");
    if (const auto* v = find("bifurcation")) st.bifurcation = parse_bool(*v, "bifurcation");
    if (const auto* v = find("bif_steps")) st.bif_steps = parse_u64(*v, "bif_steps");
    if (const auto* v = find("bif_settle")) st.bif_settle = parse_u64(*v, "bif_settle");
    if (const auto* v = find("bif_keep")) st.bif_keep = parse_u64(*v, "bif_keep");
    if (const auto* v = find("samples")) st.samples = parse_u64(*v, "samples");
    if (const auto* v = find("orbit")) st.orbit_export = parse_u64(*v, "orbit");
    if (const auto* v = find("self_check")) st.self_check = parse_bool(*v, "self_check");
    if (const auto* v = find("x0")) st.x0 = parse_double(*v, "x0");
    if (const auto* v = find("burn_in")) st.burn_in = parse_u64(*v, "burn_in");
    if (st.samples < 1) throw ConfigError("samples must be >= 1");
    return st;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& name,
                                   std::optional<std::uint64_t> master_seed_override) {
    RawConfig raw = tokenize(text, name);
    if (raw.top.empty() && raw.runs.empty()) throw ConfigError(name + ": empty config");

    ExperimentConfig cfg;
    cfg.name = name;

    std::string command = "estimate";
    if (auto it = raw.top.find("command"); it != raw.top.end()) command = it->second;

    std::uint64_t master_seed = 1;
    if (auto it = raw.top.find("seed"); it != raw.top.end())
        master_seed = parse_u64(it->second, "seed");
    if (master_seed_override) master_seed = *master_seed_override;

    if (auto it = raw.top.find("plot"); it != raw.top.end())
        cfg.plot = parse_bool(it->second, "plot");

    if (command == "stats") {
        cfg.command = ExperimentConfig::Command::stats;
        check_keys(raw.top, kStatsKeys, name);
        if (!raw.runs.empty()) throw ConfigError(name + ": stats configs take no [run] sections");
        cfg.stats = build_stats(raw.top, master_seed);
        return cfg;
    }
    if (command != "estimate") throw ConfigError(name + ": unknown command '" + command + "'");

    cfg.command = ExperimentConfig::Command::estimate;
    check_keys(raw.top, kEstimateKeys, name);
    if (raw.runs.empty()) throw ConfigError(name + ": estimate configs need at least one [run]");
    for (std::size_t i = 0; i < raw.runs.size(); ++i)
        for (std::size_t j = i + 1; j < raw.runs.size(); ++j)
            if (raw.runs[i].first == raw.runs[j].first)
                throw ConfigError(name + ": duplicate run name '" + raw.runs[i].first + "'");
    for (std::size_t i = 0; i < raw.runs.size(); ++i) {
        check_keys(raw.runs[i].second, kEstimateKeys, name + " [run " + raw.runs[i].first + "]");
        cfg.runs.push_back(
            build_run(raw.runs[i].first, raw.top, raw.runs[i].second, master_seed, i));
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path,
                                   std::optional<std::uint64_t> master_seed_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    const std::string stem = std::filesystem::path(path).stem().string();
    return parse_config_text(text.str(), stem, master_seed_override);
}

std::string resolve_preset(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    if (fs::exists(name_or_path)) return name_or_path;
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("CHAOTICLMS_PRESET_DIR")) dirs.push_back(env);
    dirs.push_back("presets");
    if (const char* baked = CHAOTICLMS_SOURCE_PRESET_DIR; baked[0] != '\0') dirs.push_back(baked);
    for (const auto& d : dirs) {
        const fs::path p = fs::path(d) / (name_or_path + ".cfg");
        if (fs::exists(p)) return p.string();
        const fs::path q = fs::path(d) / name_or_path;
        if (fs::exists(q)) return q.string();
    }
    throw ConfigError("preset not found: " + name_or_path);
}

namespace {

std::string sanitize(const std::string& name) {
    std::string out = name;
    for (auto& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return out;
}

struct ManifestRow {
    std::string artifact;
    std::string kind;
    std::string description;
};

void write_manifest(const std::string& out_dir, std::vector<ManifestRow> rows) {
    std::sort(rows.begin(), rows.end(),
              [](const ManifestRow& a, const ManifestRow& b) { return a.artifact < b.artifact; });
    AtomicFile f((std::filesystem::path(out_dir) / "manifest.csv").string());
    f.stream() << "artifact,kind,description\n";
    for (const auto& r : rows) f.stream() << r.artifact << ',' << r.kind << ",\"" << r.description
                                          << "\"\n";
    f.commit();
}

int run_stats(const ExperimentConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const StatsRequest& st = cfg.stats;
    std::vector<ManifestRow> manifest;

    const bool needs_orbit =
        st.moments || st.autocorr || st.histogram_bins || st.self_check;
    Orbit orbit;
    if (needs_orbit) {
        LogisticParams params;
        params.x0 = std::isnan(st.x0) ? derive_initial_condition(st.seed) : st.x0;
        params.burn_in = st.burn_in;
        orbit = generate_orbit(params, st.samples, LambdaSchedule::constant(4.0));
        if (orbit.degenerate())
            std::cerr << "warning: orbit collapsed onto a fixed point (degenerate x0?)\n";
    }

    int status = 0;

    if (st.moments) {
        const unsigned max_nu = *st.moments;
        std::vector<Rational> theory;
        for (unsigned nu = 0; nu <= max_nu; ++nu)
            theory.push_back(st.centered ? centered_moment(nu) : theoretical_moment(nu));
        const auto samples = st.centered ? center(orbit).values() : orbit.values();
        const auto empirical = empirical_moments(samples, max_nu);
        AtomicFile f((fs::path(out_dir) / "moments.csv").string());
        write_moment_report_csv(f.stream(), theory, empirical);
        f.commit();
        manifest.push_back({"moments.csv", "moments",
                            std::string(st.centered ? "centered" : "raw") + " moments 0.." +
                                std::to_string(max_nu) + ", N=" + std::to_string(st.samples)});
    }

    if (st.autocorr) {
        const std::size_t max_lag = *st.autocorr;
        std::vector<Rational> theory;
        for (std::size_t m = 0; m <= max_lag; ++m)
            theory.push_back(theoretical_autocorr(static_cast<unsigned>(m), st.centered));
        const auto samples = st.centered ? center(orbit).values() : orbit.values();
        const auto est = empirical_autocorr(samples, max_lag);
        AtomicFile f((fs::path(out_dir) / "autocorr.csv").string());
        write_autocorr_report_csv(f.stream(), theory, est);
        f.commit();
        manifest.push_back({"autocorr.csv", "autocorr",
                            std::string(st.centered ? "centered" : "raw") + " autocorrelation lags 0.." +
                                std::to_string(max_lag) + ", N=" + std::to_string(st.samples)});
    }

    if (st.histogram_bins) {
        const auto h = histogram(orbit.values(), *st.histogram_bins, 0.0, 1.0, true);
        AtomicFile f((fs::path(out_dir) / "histogram.csv").string());
        write_histogram_csv(f.stream(), h);
        f.commit();
        manifest.push_back({"histogram.csv", "histogram",
                            std::to_string(*st.histogram_bins) + " bins on [0,1], N=" +
                                std::to_string(st.samples)});
    }

    if (st.orbit_export) {
        LogisticParams params;
        params.x0 = std::isnan(st.x0) ? derive_initial_condition(st.seed) : st.x0;
        params.burn_in = st.burn_in;
        const Orbit o = generate_orbit(params, *st.orbit_export, LambdaSchedule::constant(4.0));
        AtomicFile f((fs::path(out_dir) / "orbit.csv").string());
        write_orbit_csv(f.stream(), o);
        f.commit();
        manifest.push_back({"orbit.csv", "orbit",
                            "lambda=4 orbit, n=" + std::to_string(*st.orbit_export) +
                                ", burn_in=" + std::to_string(st.burn_in)});
    }

    if (st.bifurcation) {
        const auto points = bifurcation_scan(3.4, 4.0, st.bif_steps, st.bif_settle, st.bif_keep);
        AtomicFile f((fs::path(out_dir) / "bifurcation.csv").string());
        write_bifurcation_csv(f.stream(), points);
        f.commit();
        manifest.push_back({"bifurcation.csv", "bifurcation",
                            "lambda 3.4..4, " + std::to_string(st.bif_steps) + " grid points"});
        if (cfg.plot) {
            PlotSeries s;
            s.scatter = true;
            s.x.reserve(points.size());
            s.y.reserve(points.size());
            for (const auto& p : points) {
                s.x.push_back(p.lambda);
                s.y.push_back(p.x);
            }
            AtomicFile svg((fs::path(out_dir) / "bifurcation.svg").string());
            write_svg_plot(svg.stream(), "logistic map bifurcation diagram", "lambda", "x", {s});
            svg.commit();
            manifest.push_back({"bifurcation.svg", "plot", "scatter of bifurcation.csv"});
        }
    }

    if (st.self_check) {
        std::size_t failures = 0;
        auto expect = [&](bool ok, const std::string& what) {
            if (!ok) {
                ++failures;
                std::cerr << "self-check mismatch: " << what << "\n";
            }
        };
        for (unsigned nu = 0; nu <= 10; ++nu)
            expect(std::fabs(quadrature_moment(nu) - theoretical_moment(nu).value()) < 1e-9,
                   "quadrature moment nu=" + std::to_string(nu));
        for (unsigned m = 0; m <= 10; ++m)
            expect(std::fabs(quadrature_autocorr(m) - theoretical_autocorr(m, false).value()) <
                       1e-7,
                   "quadrature autocorrelation lag=" + std::to_string(m));
        const double scale = std::sqrt(1e6 / static_cast<double>(st.samples));
        const double tol_mom = 0.01 * std::max(1.0, scale);
        const double tol_ac = 0.005 * std::max(1.0, scale);
        const auto emp = empirical_moments(orbit.values(), 7);
        for (unsigned nu = 0; nu <= 7; ++nu)
            expect(std::fabs(emp[nu] - theoretical_moment(nu).value()) < tol_mom,
                   "empirical moment nu=" + std::to_string(nu));
        const auto centered_vals = center(orbit).values();
        const std::size_t max_lag = std::min<std::size_t>(50, st.samples - 1);
        const auto ac = empirical_autocorr(centered_vals, max_lag);
        expect(std::fabs(ac.values[0] - 0.125) < tol_ac, "centered autocorrelation lag 0");
        for (std::size_t m = 1; m <= max_lag; ++m)
            expect(std::fabs(ac.values[m]) < tol_ac,
                   "centered autocorrelation lag " + std::to_string(m));
        if (failures > 0) status = 1;
    }

    write_manifest(out_dir, std::move(manifest));
    return status;
}

int run_estimate(const ExperimentConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const std::size_t n = cfg.runs.size();
    std::vector<MmaTrace> traces(n);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        traces[i] = run_estimation(cfg.runs[i].config);

    std::vector<ManifestRow> manifest;
    bool unexpected_divergence = false;
    std::vector<PlotSeries> series;

    for (std::size_t i = 0; i < n; ++i) {
        const auto& run = cfg.runs[i];
        const auto& trace = traces[i];
        const std::string file = sanitize(run.name) + "_trace.csv";
        AtomicFile f((fs::path(out_dir) / file).string());
        write_trace_csv(f.stream(), trace);
        f.commit();

        std::ostringstream desc;
        desc << trace.drive_desc << "; m=" << trace.m << " mu=" << run.config.mu.describe(trace.m)
             << " steps=" << run.config.steps << " noise_std=" << trace.noise_std
             << " seed=" << trace.seed;
        if (trace.diverged) desc << " DIVERGED@" << trace.diverged_step;
        if (trace.drive_degenerate) {
            desc << " DEGENERATE_DRIVE";
            std::cerr << "warning: run '" << run.name
                      << "' used an orbit that collapsed onto a fixed point\n";
        }
        manifest.push_back({file, "trace", desc.str()});

        if (trace.diverged && !run.expect_divergence) {
            unexpected_divergence = true;
            std::cerr << "run '" << run.name << "' diverged at step " << trace.diverged_step
                      << " (mu beyond the stability bound?)\n";
        }

        PlotSeries s;
        s.label = run.name;
        const double m0 = trace.mma.empty() ? 0.0 : trace.mma.front();
        s.x.reserve(trace.mma.size());
        s.y.reserve(trace.mma.size());
        for (std::size_t k = 0; k < trace.mma.size(); ++k) {
            s.x.push_back(static_cast<double>(k));
            s.y.push_back(mma_db(trace.mma[k], m0));
        }
        series.push_back(std::move(s));
    }

    if (cfg.plot) {
        const std::string file = sanitize(cfg.name) + "_mma.svg";
        AtomicFile svg((fs::path(out_dir) / file).string());
        write_svg_plot(svg.stream(), "model misadjustment, " + cfg.name, "step",
                       "MMA [dB rel. ||b||^2]", series);
        svg.commit();
        manifest.push_back({file, "plot", "overlay of all run traces"});
    }

    write_manifest(out_dir, std::move(manifest));
    return unexpected_divergence ? 3 : 0;
}

} // namespace

int run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (config.command == ExperimentConfig::Command::stats) return run_stats(config, out_dir);
    return run_estimate(config, out_dir);
}

} // namespace chaoticlms

// Command-line front end. Subcommands:
//   stats    - moment/autocorrelation/histogram/bifurcation reports
//   estimate - LMS channel-estimation runs from a config file
//   preset   - run a shipped experiment preset by name
//   bounds   - closed-form step-size bounds and eigenvalue spread
//
// Exit codes: 0 ok, 1 oracle mismatch (self-check), 2 usage or config error,
// 3 unexpected divergence. CHAOTICLMS_SEED overrides the master seed.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "chaoticlms/csv.hpp"
#include "chaoticlms/experiment.hpp"
#include "chaoticlms/lms_theory.hpp"
#include "chaoticlms/rational.hpp"
#include "chaoticlms/reports.hpp"

namespace {

std::optional<std::uint64_t> env_seed_override() {
    const char* env = std::getenv("CHAOTICLMS_SEED");
    if (!env || !*env) return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw chaoticlms::ConfigError(std::string("CHAOTICLMS_SEED is not a valid seed: ") + env);
    }
}

struct StatsCliArgs {
    std::int64_t moments = -1;
    std::int64_t autocorr = -1;
    bool centered = false;
    std::int64_t histogram = -1;
    bool bifurcation = false;
    std::int64_t orbit = -1;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    std::uint64_t burn_in = chaoticlms::kDefaultBurnIn;
    bool self_check = false;
    std::string out = "out";
    bool no_plot = false;
};

int run_stats_cli(const StatsCliArgs& a) {
    if (a.moments < 0 && a.autocorr < 0 && a.histogram < 0 && !a.bifurcation && a.orbit < 0 &&
        !a.self_check)
        throw chaoticlms::ConfigError(
            "stats: request at least one report "
            "(--moments/--autocorr/--histogram/--bifurcation/--orbit/--self-check)");
    chaoticlms::ExperimentConfig cfg;
    cfg.command = chaoticlms::ExperimentConfig::Command::stats;
    cfg.name = "stats";
    cfg.plot = !a.no_plot;
    auto& st = cfg.stats;
    if (a.moments >= 0) st.moments = static_cast<unsigned>(a.moments);
    if (a.autocorr >= 0) st.autocorr = static_cast<std::size_t>(a.autocorr);
    st.centered = a.centered;
    if (a.histogram >= 0) st.histogram_bins = static_cast<std::size_t>(a.histogram);
    st.bifurcation = a.bifurcation;
    if (a.orbit >= 0) st.orbit_export = static_cast<std::size_t>(a.orbit);
    st.samples = a.samples;
    st.seed = a.seed;
    st.burn_in = a.burn_in;
    st.self_check = a.self_check;
    if (auto env = env_seed_override()) st.seed = *env;
    return chaoticlms::run_experiment(cfg, a.out);
}

int run_bounds_cli(std::uint64_t m, bool centered, const std::string& out) {
    using namespace chaoticlms;
    const auto s = analytic_spectrum(m, centered);
    const Rational fluct(16, static_cast<long long>(3 + 2 * m));
    const double mu_max = mu_bound_fluctuation(m);
    std::cout << "FIR order m        : " << m << (centered ? "  (zero-mean drive)\n" : "  (raw drive)\n")
              << "lambda_max         : " << fmt17(s.lambda_max) << '\n'
              << "lambda_min         : " << fmt17(s.lambda_min) << '\n'
              << "eigenvalue spread  : " << fmt17(s.sigma) << '\n'
              << "mu bound (mean)    : " << fmt17(mu_bound_mean(m, centered)) << '\n'
              << "mu bound (fluct.)  : " << fmt17(mu_max) << "  (" << fluct.str() << ")\n"
              << "decay factor at mu : " << fmt17(fluctuation_decay_factor(mu_max, m)) << '\n';
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        const SpectrumRow rows[] = {{m, false}, {m, true}};
        AtomicFile f((std::filesystem::path(out) / "spectrum.csv").string());
        write_spectrum_csv(f.stream(), rows);
        f.commit();
        std::cout << "wrote " << (std::filesystem::path(out) / "spectrum.csv").string() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergodic logistic-map statistics and LMS channel-estimation experiments"};
    app.require_subcommand(1);

    StatsCliArgs stats_args;
    auto* stats = app.add_subcommand("stats", "statistical reports for the lambda=4 map");
    stats->add_option("--moments", stats_args.moments, "moment report up to this order")
        ->check(CLI::NonNegativeNumber);
    stats->add_option("--autocorr", stats_args.autocorr, "autocorrelation report up to this lag")
        ->check(CLI::NonNegativeNumber);
    stats->add_flag("--centered", stats_args.centered, "use the zero-mean sequence");
    stats->add_option("--histogram", stats_args.histogram, "histogram with this many bins")
        ->check(CLI::PositiveNumber);
    stats->add_flag("--bifurcation", stats_args.bifurcation, "bifurcation diagram scan");
    stats->add_option("--orbit", stats_args.orbit, "export an orbit of this length")
        ->check(CLI::PositiveNumber);
    stats->add_option("--samples", stats_args.samples, "orbit length for empirical estimates")
        ->check(CLI::PositiveNumber);
    stats->add_option("--seed", stats_args.seed, "master seed");
    stats->add_option("--burn-in", stats_args.burn_in, "discarded leading iterates");
    stats->add_flag("--self-check", stats_args.self_check,
                    "verify quadrature and empirical estimates against the closed forms");
    stats->add_option("--out", stats_args.out, "output directory");
    stats->add_flag("--no-plot", stats_args.no_plot, "skip SVG output");

    std::string estimate_config;
    std::string estimate_out = "out";
    bool estimate_expect_div = false;
    std::optional<bool> plot_override;
    auto* estimate = app.add_subcommand("estimate", "LMS channel-estimation runs from a config");
    estimate->add_option("--config", estimate_config, "experiment config file")->required();
    estimate->add_option("--out", estimate_out, "output directory");
    estimate->add_flag("--expect-divergence", estimate_expect_div,
                       "treat divergence as expected (exit 0)");
    estimate->add_flag_callback("--plot", [&] { plot_override = true; });
    estimate->add_flag_callback("--no-plot", [&] { plot_override = false; });

    std::string preset_name;
    std::string preset_out = "out";
    auto* preset = app.add_subcommand("preset", "run a shipped experiment preset");
    preset->add_option("name", preset_name, "preset name or config path")->required();
    preset->add_option("--out", preset_out, "output directory");
    preset->add_flag_callback("--plot", [&] { plot_override = true; });
    preset->add_flag_callback("--no-plot", [&] { plot_override = false; });

    std::uint64_t bounds_m = 128;
    bool bounds_centered = false;
    std::string bounds_out;
    auto* bounds = app.add_subcommand("bounds", "step-size bounds and eigenvalue spread");
    bounds->add_option("m", bounds_m, "FIR filter order")->required();
    bounds->add_flag("--centered", bounds_centered, "zero-mean drive");
    bounds->add_option("--out", bounds_out, "also write spectrum.csv here");

    try {
        app.parse(argc, argv);

        if (*stats) return run_stats_cli(stats_args);

        if (*estimate || *preset) {
            const std::string path =
                *estimate ? estimate_config : chaoticlms::resolve_preset(preset_name);
            auto cfg = chaoticlms::parse_config_file(path, env_seed_override());
            if (plot_override) cfg.plot = *plot_override;
            if (*estimate && estimate_expect_div)
                for (auto& run : cfg.runs) run.expect_divergence = true;
            return chaoticlms::run_experiment(cfg, *estimate ? estimate_out : preset_out);
        }

        if (*bounds) return run_bounds_cli(bounds_m, bounds_centered, bounds_out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit 0, usage errors exit 2
    } catch (const chaoticlms::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

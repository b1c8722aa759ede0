#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chaoticlms/experiment.hpp"

using namespace chaoticlms;
namespace fs = std::filesystem;

#ifndef CHAOTICLMS_TEST_PRESET_DIR
#define CHAOTICLMS_TEST_PRESET_DIR "presets"
#endif

namespace {

std::string fresh_dir(const std::string& tag) {
    const auto p = fs::temp_directory_path() / ("chaoticlms_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kSmallEstimate = R"(
command = estimate
seed = 9
m = 8
steps = 300
noise_std = 0
channel_feedback = -0.2 0.49 0.292

[run a]
drive = chaotic_centered
lambda = 4
mu = max

[run b]
drive = gaussian
mu = normalized
)";

} // namespace

TEST_CASE("config parsing happy path") {
    const auto cfg = parse_config_text(kSmallEstimate, "small");
    CHECK(cfg.command == ExperimentConfig::Command::estimate);
    REQUIRE(cfg.runs.size() == 2);
    CHECK(cfg.runs[0].name == "a");
    CHECK(cfg.runs[0].config.m == 8);
    CHECK(cfg.runs[0].config.steps == 300);
    CHECK(cfg.runs[0].config.mu.kind == MuSpec::Kind::max_stable);
    CHECK(cfg.runs[1].config.mu.kind == MuSpec::Kind::normalized);
    CHECK(cfg.runs[0].config.seed != cfg.runs[1].config.seed); // per-run substreams
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_config_text("", "empty"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("command = estimate\n", "norun"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("nonsense\n", "noequals"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("bad_key = 1\n[run x]\ndrive = gaussian\n", "badkey"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("command = wat\n", "badcmd"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[run x]\nmu = max\n", "nodrive"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[run x]\ndrive = martian\n", "baddrive"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[section]\n", "badsection"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[run x]\ndrive = gaussian\nmu = banana\n", "badmu"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config_text("[run x]\ndrive = chaotic_raw\nlambda = 4\nlambda_switch = 0:4\n",
                          "twoschedules"),
        ConfigError);
    CHECK_THROWS_AS(parse_config_text("m = 4\nm = 5\n[run x]\ndrive = gaussian\n", "dupkey"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("command = stats\n[run x]\ndrive = gaussian\n", "statsrun"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config_text("[run x]\ndrive = gaussian\n[run x]\ndrive = gaussian\n", "duprun"),
        ConfigError);
    CHECK_THROWS_AS(parse_config_text("[runway]\ndrive = gaussian\n", "runway"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("seed = -4\n[run x]\ndrive = gaussian\n", "negseed"),
                    ConfigError);
}

TEST_CASE("mu grammar") {
    const char* text = R"(
[run v]
drive = gaussian
mu = 0.125
[run n]
drive = gaussian
mu = normalized
[run m]
drive = gaussian
mu = max
[run s]
drive = gaussian
mu = max*0.5
)";
    const auto cfg = parse_config_text(text, "mu");
    REQUIRE(cfg.runs.size() == 4);
    CHECK(cfg.runs[0].config.mu.kind == MuSpec::Kind::value);
    CHECK(cfg.runs[0].config.mu.resolve(0) == 0.125);
    CHECK(cfg.runs[1].config.mu.kind == MuSpec::Kind::normalized);
    CHECK(cfg.runs[2].config.mu.resolve(128) == doctest::Approx(16.0 / 259.0));
    CHECK(cfg.runs[3].config.mu.resolve(128) == doctest::Approx(8.0 / 259.0));
}

TEST_CASE("master seed override rewires run substreams") {
    const auto a = parse_config_text(kSmallEstimate, "small");
    const auto b = parse_config_text(kSmallEstimate, "small", 9); // same as file seed
    CHECK(a.runs[0].config.seed == b.runs[0].config.seed);
    const auto c = parse_config_text(kSmallEstimate, "small", 77);
    CHECK(a.runs[0].config.seed != c.runs[0].config.seed);
}

TEST_CASE("schedule grammar round-trips into generated experiments") {
    const char* text = R"(
command = estimate
m = 4
steps = 50

[run sw]
drive = chaotic_centered
lambda_switch = 0:4 10:3.95 30:4
mu = max

[run mod]
drive = chaotic_centered
lambda_modulated = 3.95 0.05
signal = synthetic
signal_len = 64
mu = max
)";
    const auto cfg = parse_config_text(text, "sched");
    REQUIRE(cfg.runs.size() == 2);
    CHECK(cfg.runs[0].config.drive.schedule.kind() == LambdaSchedule::Kind::switched);
    CHECK(cfg.runs[0].config.drive.schedule.at(9) == 4.0);
    CHECK(cfg.runs[0].config.drive.schedule.at(10) == 3.95);
    CHECK(cfg.runs[1].config.drive.schedule.kind() == LambdaSchedule::Kind::modulated);
}

TEST_CASE("estimate experiment writes traces, plot and manifest") {
    const auto cfg = parse_config_text(kSmallEstimate, "small");
    const auto dir = fresh_dir("estimate");
    CHECK(run_experiment(cfg, dir) == 0);
    CHECK(fs::exists(fs::path(dir) / "a_trace.csv"));
    CHECK(fs::exists(fs::path(dir) / "b_trace.csv"));
    CHECK(fs::exists(fs::path(dir) / "small_mma.svg"));
    CHECK(fs::exists(fs::path(dir) / "manifest.csv"));

    const auto manifest = slurp(fs::path(dir) / "manifest.csv");
    CHECK(manifest.find("a_trace.csv") != std::string::npos);
    CHECK(manifest.find("small_mma.svg") != std::string::npos);

    const auto trace = slurp(fs::path(dir) / "a_trace.csv");
    CHECK(trace.rfind("step,mma,mma_db\n", 0) == 0);
}

TEST_CASE("divergence exit-code contract") {
    const char* bad = R"(
command = estimate
m = 8
steps = 400
channel_feedback = -0.2 0.49 0.292

[run hot]
drive = chaotic_centered
lambda = 4
mu = max*3
)";
    auto cfg = parse_config_text(bad, "diverge");
    const auto dir = fresh_dir("diverge");
    CHECK(run_experiment(cfg, dir) == 3);

    cfg.runs[0].expect_divergence = true;
    const auto dir2 = fresh_dir("diverge_ok");
    CHECK(run_experiment(cfg, dir2) == 0);
}

TEST_CASE("stats experiment writes the requested reports") {
    ExperimentConfig cfg;
    cfg.command = ExperimentConfig::Command::stats;
    cfg.name = "stats";
    cfg.plot = false;
    cfg.stats.moments = 7;
    cfg.stats.autocorr = 10;
    cfg.stats.histogram_bins = 20;
    cfg.stats.samples = 50000;
    cfg.stats.seed = 4;
    const auto dir = fresh_dir("stats");
    CHECK(run_experiment(cfg, dir) == 0);
    CHECK(fs::exists(fs::path(dir) / "moments.csv"));
    CHECK(fs::exists(fs::path(dir) / "autocorr.csv"));
    CHECK(fs::exists(fs::path(dir) / "histogram.csv"));
    CHECK(fs::exists(fs::path(dir) / "manifest.csv"));

    // the moments report carries the exact theoretical column
    const auto moments = slurp(fs::path(dir) / "moments.csv");
    CHECK(moments.find("order_or_lag,theoretical,empirical,abs_error") == 0);
    CHECK(moments.find("\n2,0.375,") != std::string::npos);
    CHECK(moments.find("\n7,0.20947265625,") != std::string::npos);
}

TEST_CASE("preset files load through resolve_preset") {
    for (const std::string name : {"fig3", "fig4", "fig6", "table1", "table2"}) {
        const auto path = (fs::path(CHAOTICLMS_TEST_PRESET_DIR) / (name + ".cfg")).string();
        REQUIRE(fs::exists(path));
        const auto cfg = parse_config_file(path);
        if (name.rfind("fig", 0) == 0)
            CHECK(cfg.command == ExperimentConfig::Command::estimate);
        else
            CHECK(cfg.command == ExperimentConfig::Command::stats);
        CHECK(resolve_preset(path) == path);
    }
    CHECK_THROWS_AS(resolve_preset("definitely_not_a_preset"), ConfigError);
}

TEST_CASE("preset reruns are byte-identical") {
    const auto path = (fs::path(CHAOTICLMS_TEST_PRESET_DIR) / "fig6.cfg").string();
    auto cfg = parse_config_file(path);
    // shrink for test speed; determinism is what matters here
    for (auto& run : cfg.runs) run.config.steps = 250;
    const auto d1 = fresh_dir("det1");
    const auto d2 = fresh_dir("det2");
    CHECK(run_experiment(cfg, d1) == 0);
    CHECK(run_experiment(cfg, d2) == 0);
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(d1)) {
        if (entry.path().extension() != ".csv") continue;
        const auto other = fs::path(d2) / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
        ++compared;
    }
    CHECK(compared >= 5); // 4 traces + manifest
}

TEST_CASE("orbit export uses the index,lambda,sample schema at full precision") {
    ExperimentConfig cfg;
    cfg.command = ExperimentConfig::Command::stats;
    cfg.name = "orbit";
    cfg.plot = false;
    cfg.stats.orbit_export = 5;
    cfg.stats.x0 = 0.3;
    cfg.stats.burn_in = 0;
    const auto dir = fresh_dir("orbit");
    CHECK(run_experiment(cfg, dir) == 0);
    const auto csv = slurp(fs::path(dir) / "orbit.csv");
    CHECK(csv.rfind("index,lambda,sample\n", 0) == 0);
    CHECK(csv.find("0,4,0.29999999999999999\n") != std::string::npos);
    CHECK(csv.find("1,4,0.83999999999999997\n") != std::string::npos);
}

TEST_CASE("stats self-check passes against the closed forms") {
    ExperimentConfig cfg;
    cfg.command = ExperimentConfig::Command::stats;
    cfg.name = "selfcheck";
    cfg.plot = false;
    cfg.stats.self_check = true;
    cfg.stats.samples = 1000000;
    cfg.stats.seed = 2;
    const auto dir = fresh_dir("selfcheck");
    CHECK(run_experiment(cfg, dir) == 0);
}

TEST_CASE("plots are svg documents and never alter csv content") {
    const auto cfg = parse_config_text(kSmallEstimate, "plotted");
    const auto with_plot = fresh_dir("withplot");
    CHECK(run_experiment(cfg, with_plot) == 0);
    const auto svg = slurp(fs::path(with_plot) / "plotted_mma.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);

    auto quiet = cfg;
    quiet.plot = false;
    const auto without_plot = fresh_dir("noplot");
    CHECK(run_experiment(quiet, without_plot) == 0);
    CHECK_FALSE(fs::exists(fs::path(without_plot) / "plotted_mma.svg"));
    CHECK(slurp(fs::path(with_plot) / "a_trace.csv") ==
          slurp(fs::path(without_plot) / "a_trace.csv"));
}

TEST_CASE("derived initial conditions stay inside the open interval") {
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const double x0 = derive_initial_condition(seed);
        CHECK(x0 > 0.0);
        CHECK(x0 < 1.0);
    }
}

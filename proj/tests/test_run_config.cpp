#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "fdpn/run_config.hpp"

using namespace fdpn;

namespace {

std::string error_of(const std::string& text) {
    try {
        RunConfig::parse(text, "cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("defaults build the reference scenario") {
    const auto cfg = RunConfig::parse("");
    const auto s = cfg.scenario();
    CHECK(s.ofdm.n_fft == 1024);
    CHECK(s.ofdm.used_subcarriers.size() == 300);
    CHECK(s.ofdm.cp_len == 72);
    CHECK(s.ofdm.n_symbols == 64);
    CHECK(s.beta_hz == 10.0);
    CHECK(s.osc_mode == OscillatorMode::Common);
    CHECK(!s.inject_phase_rad);
    CHECK(s.effective_sir_db() == -30.0);
    CHECK(s.snr_soi_db == 25.0);
    CHECK(s.estimator.kind == EstimatorKind::WfWindow);
    CHECK(s.estimator.window_m == 35);
    CHECK(s.estimator.lpf_len_l == 50);
    CHECK(s.n_trials == 200);
    CHECK(s.seed == 1);
}

TEST_CASE("values, comments and whitespace") {
    const auto cfg = RunConfig::parse(
        "# header comment\n"
        "  ofdm.n_symbols =  8   # trailing\n"
        "\n"
        "pn.osc_mode=independent\r\n"
        "estimator.kind = lpf\n"
        "estimator.lpf_kind = windowed_sinc\n"
        "link.atten_diff_db = -42.5\n"
        "run.seed = 18446744073709551615\n"
        "pn.inject_phase_rad = 0.25\n"
        "sweep.values = 1, 5,35\n");
    const auto s = cfg.scenario();
    CHECK(s.ofdm.n_symbols == 8);
    CHECK(s.osc_mode == OscillatorMode::Independent);
    CHECK(s.estimator.kind == EstimatorKind::LpfBased);
    CHECK(s.estimator.lpf_kind == LpfKind::WindowedSinc);
    CHECK(!s.sir_at_digital_db);
    CHECK(*s.atten_diff_db == -42.5);
    CHECK(s.seed == 18446744073709551615ull);
    CHECK(*s.inject_phase_rad == 0.25);
    CHECK(cfg.sweep_values(SweepKind::Window) == std::vector<double>{1, 5, 35});
    CHECK(cfg.get("link.sir_at_digital_db").empty());
    CHECK(cfg.source_lines().size() == 9);
    CHECK(cfg.source_lines()[0] == "# header comment");
}

TEST_CASE("errors carry the line number") {
    CHECK(error_of("ofdm.n_fft = 1024\npn.beta = 3\n").rfind("cfg:2: unknown key 'pn.beta'", 0) == 0);
    CHECK(error_of("\n\nrun.seed\n").rfind("cfg:3:", 0) == 0);
    CHECK(error_of("run.n_trials = many\n").rfind("cfg:1: run.n_trials", 0) == 0);
    CHECK(error_of("run.n_trials = -3\n").rfind("cfg:1:", 0) == 0);
    CHECK(error_of("pn.beta_hz = nan\n").rfind("cfg:1:", 0) == 0);
    CHECK(error_of("pn.osc_mode = shared\n").rfind("cfg:1:", 0) == 0);
    CHECK(error_of("pn.beta_hz = 1\npn.beta_hz = 2\n").rfind("cfg:2: duplicate", 0) == 0);
    CHECK(error_of("sweep.values = 1,,2\n").rfind("cfg:1:", 0) == 0);
}

TEST_CASE("inconsistent scenarios are rejected") {
    auto both = RunConfig::parse("link.sir_at_digital_db = -30\nlink.atten_diff_db = -40\n");
    CHECK_THROWS_AS(both.scenario(), ConfigError);
    auto used = RunConfig::parse("ofdm.n_fft = 64\nofdm.n_used = 64\n");
    CHECK_THROWS_AS(used.scenario(), ConfigError);
    auto qam = RunConfig::parse("ofdm.qam_order = 8\n");
    CHECK_THROWS_AS(qam.scenario(), ConfigError);
}

TEST_CASE("set overrides and validates") {
    auto cfg = RunConfig::parse("run.seed = 5\n");
    cfg.set("run.seed", "9");
    CHECK(cfg.scenario().seed == 9);
    CHECK(cfg.is_set("run.seed"));
    CHECK_THROWS_AS(cfg.set("run.sed", "1"), ConfigError);
    CHECK_THROWS_AS(cfg.set("run.threads", "x"), ConfigError);
}

TEST_CASE("default sweep grids") {
    const auto cfg = RunConfig::parse("");
    CHECK(cfg.sweep_values(SweepKind::Beta) == std::vector<double>{1, 10, 100, 1000, 10000});
    const auto atten = cfg.sweep_values(SweepKind::AttenDiff);
    CHECK(atten.size() == 11);
    CHECK(atten.front() == -60.0);
    CHECK(atten.back() == -30.0);
    CHECK(cfg.sweep_values(SweepKind::Window) == std::vector<double>{1, 5, 15, 35, 70, 150, 548, 1096});
    CHECK(cfg.sweep_sir_values().empty());
}

TEST_CASE("effective configuration lists every key once, sorted") {
    const auto cfg = RunConfig::parse("pn.beta_hz = 100\n");
    const auto eff = cfg.effective();
    CHECK(eff.size() == RunConfig::known_keys().size());
    for (std::size_t i = 1; i < eff.size(); ++i) CHECK(eff[i - 1].first < eff[i].first);
    bool found = false;
    for (const auto& [k, v] : eff)
        if (k == "pn.beta_hz") found = (v == "100");
    CHECK(found);
}

TEST_CASE("missing file is an io error") {
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/dir/x.cfg"), IoError);
}

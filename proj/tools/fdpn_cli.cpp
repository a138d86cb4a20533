// fdpn command-line front end. Talks to the simulator only through the C API.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fdpn/fdpn.h"

namespace {

struct Options {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

int report_error(const char* what) {
    std::fprintf(stderr, "fdpn: %s: %s\n", what, fdpn_last_error());
    return 1;
}

// Loads the config (or defaults when no path is given) and applies overrides.
fdpn_config* load_config(const Options& o, CLI::App* sub) {
    fdpn_config* cfg = nullptr;
    const fdpn_status st = o.config.empty() ? fdpn_config_parse("", &cfg) : fdpn_config_load(o.config.c_str(), &cfg);
    if (st != FDPN_OK) {
        report_error("config");
        return nullptr;
    }
    if (sub->count("--seed") && fdpn_config_set_seed(cfg, o.seed) != FDPN_OK) {
        report_error("--seed");
        fdpn_config_free(cfg);
        return nullptr;
    }
    if (sub->count("--threads") && fdpn_config_set_threads(cfg, o.threads) != FDPN_OK) {
        report_error("--threads");
        fdpn_config_free(cfg);
        return nullptr;
    }
    return cfg;
}

int cmd_sweep(const Options& o, CLI::App* sub, fdpn_sweep_kind kind) {
    fdpn_config* cfg = load_config(o, sub);
    if (!cfg) return 1;
    fdpn_sweep* sweep = nullptr;
    int rc = 0;
    if (fdpn_sweep_run(cfg, kind, &sweep) != FDPN_OK) {
        rc = report_error("sweep");
    } else if (fdpn_sweep_write_csv(sweep, o.out.c_str()) != FDPN_OK) {
        rc = report_error("output");
    }
    fdpn_sweep_free(sweep);
    fdpn_config_free(cfg);
    return rc;
}

int cmd_single(const Options& o, CLI::App* sub) {
    fdpn_config* cfg = load_config(o, sub);
    if (!cfg) return 1;
    const int rc = fdpn_single_write_csv(cfg, o.out.c_str()) == FDPN_OK ? 0 : report_error("single");
    fdpn_config_free(cfg);
    return rc;
}

int cmd_opcount(const Options& o, CLI::App* sub) {
    fdpn_config* cfg = load_config(o, sub);
    if (!cfg) return 1;
    char* table = nullptr;
    int rc = 0;
    if (fdpn_opcount_table(cfg, &table) != FDPN_OK) {
        rc = report_error("opcount");
    } else {
        std::fputs(table, stdout);
    }
    fdpn_string_free(table);
    fdpn_config_free(cfg);
    return rc;
}

int cmd_selftest() {
    char* report = nullptr;
    const fdpn_status st = fdpn_selftest(&report);
    if (report) std::fputs(report, stdout);
    fdpn_string_free(report);
    if (st != FDPN_OK) return report_error("selftest");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Full-duplex OFDM phase-noise estimation and SI-cancellation simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fdpn_version()));

    Options opts;
    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", opts.config, "Run configuration file (key = value)");
        auto* out = sub->add_option("--out", opts.out, "Output CSV path");
        if (needs_out) out->required();
        sub->add_option("--seed", opts.seed, "Override run.seed");
        sub->add_option("--threads", opts.threads, "Cap on worker threads")->check(CLI::PositiveNumber);
    };

    auto* beta = app.add_subcommand("sweep-beta", "Suppression vs. phase-noise 3-dB bandwidth");
    auto* atten = app.add_subcommand("sweep-atten", "Suppression vs. SOI-to-SI attenuation difference");
    auto* window = app.add_subcommand("sweep-window", "Suppression vs. averaging window size");
    auto* single = app.add_subcommand("single", "Per-sample dump of one trial");
    auto* opcount = app.add_subcommand("opcount", "Arithmetic cost table (TSV on stdout)");
    auto* selftest = app.add_subcommand("selftest", "Quick internal consistency checks");
    for (auto* sub : {beta, atten, window, single}) add_common(sub, true);
    add_common(opcount, false);

    CLI11_PARSE(app, argc, argv);

    if (beta->parsed()) return cmd_sweep(opts, beta, FDPN_SWEEP_BETA);
    if (atten->parsed()) return cmd_sweep(opts, atten, FDPN_SWEEP_ATTEN);
    if (window->parsed()) return cmd_sweep(opts, window, FDPN_SWEEP_WINDOW);
    if (single->parsed()) return cmd_single(opts, single);
    if (opcount->parsed()) return cmd_opcount(opts, opcount);
    if (selftest->parsed()) return cmd_selftest();
    return 1;
}

#include "fdpn/fdpn.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fdpn/commands.hpp"

struct fdpn_config {
    fdpn::RunConfig cfg;
};

struct fdpn_sweep {
    fdpn::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

fdpn_status fail(fdpn_status code, std::string msg) {
    g_last_error = std::move(msg);
    return code;
}

// Maps the C++ exception hierarchy onto status codes.
template <typename Fn>
fdpn_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        fn();
        return FDPN_OK;
    } catch (const fdpn::ConfigError& e) {
        return fail(FDPN_ERR_CONFIG, e.what());
    } catch (const fdpn::InputError& e) {
        return fail(FDPN_ERR_INPUT, e.what());
    } catch (const fdpn::IoError& e) {
        return fail(FDPN_ERR_IO, e.what());
    } catch (const fdpn::MetricError& e) {
        return fail(FDPN_ERR_METRIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FDPN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FDPN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FDPN_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

}  // namespace

extern "C" {

const char* fdpn_version(void) { return fdpn::kVersion; }

const char* fdpn_last_error(void) { return g_last_error.c_str(); }

void fdpn_string_free(char* s) { std::free(s); }

fdpn_status fdpn_config_load(const char* path, fdpn_config** out) {
    if (!path || !out) return fail(FDPN_ERR_ARGUMENT, "fdpn_config_load: null argument");
    *out = nullptr;
    return guarded([&] { *out = new fdpn_config{fdpn::RunConfig::load(path)}; });
}

fdpn_status fdpn_config_parse(const char* text, fdpn_config** out) {
    if (!text || !out) return fail(FDPN_ERR_ARGUMENT, "fdpn_config_parse: null argument");
    *out = nullptr;
    return guarded([&] { *out = new fdpn_config{fdpn::RunConfig::parse(text)}; });
}

void fdpn_config_free(fdpn_config* cfg) { delete cfg; }

fdpn_status fdpn_config_set(fdpn_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return fail(FDPN_ERR_ARGUMENT, "fdpn_config_set: null argument");
    return guarded([&] { cfg->cfg.set(key, value); });
}

fdpn_status fdpn_config_set_seed(fdpn_config* cfg, uint64_t seed) {
    if (!cfg) return fail(FDPN_ERR_ARGUMENT, "fdpn_config_set_seed: null config");
    return guarded([&] { cfg->cfg.set("run.seed", std::to_string(seed)); });
}

fdpn_status fdpn_config_set_threads(fdpn_config* cfg, unsigned threads) {
    if (!cfg) return fail(FDPN_ERR_ARGUMENT, "fdpn_config_set_threads: null config");
    if (threads == 0) return fail(FDPN_ERR_ARGUMENT, "fdpn_config_set_threads: threads must be >= 1");
    return guarded([&] { cfg->cfg.set("run.threads", std::to_string(threads)); });
}

fdpn_status fdpn_sweep_run(const fdpn_config* cfg, fdpn_sweep_kind kind, fdpn_sweep** out) {
    if (!cfg || !out) return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_run: null argument");
    *out = nullptr;
    fdpn::SweepKind k;
    switch (kind) {
        case FDPN_SWEEP_BETA: k = fdpn::SweepKind::Beta; break;
        case FDPN_SWEEP_ATTEN: k = fdpn::SweepKind::AttenDiff; break;
        case FDPN_SWEEP_WINDOW: k = fdpn::SweepKind::Window; break;
        default: return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_run: unknown sweep kind");
    }
    return guarded([&] { *out = new fdpn_sweep{fdpn::run_configured_sweep(cfg->cfg, k)}; });
}

void fdpn_sweep_free(fdpn_sweep* sweep) { delete sweep; }

size_t fdpn_sweep_rows(const fdpn_sweep* sweep) { return sweep ? sweep->result.rows.size() : 0; }

size_t fdpn_sweep_columns(const fdpn_sweep* sweep) { return sweep ? sweep->result.columns.size() : 0; }

const char* fdpn_sweep_column_name(const fdpn_sweep* sweep, size_t col) {
    if (!sweep || col >= sweep->result.columns.size()) return nullptr;
    return sweep->result.columns[col].c_str();
}

fdpn_status fdpn_sweep_x(const fdpn_sweep* sweep, size_t row, double* x) {
    if (!sweep || !x) return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_x: null argument");
    if (row >= sweep->result.rows.size()) return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_x: row out of range");
    *x = sweep->result.rows[row].x;
    return FDPN_OK;
}

fdpn_status fdpn_sweep_value(const fdpn_sweep* sweep, size_t row, size_t col, double* mean_db,
                             double* ci95_db) {
    if (!sweep) return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_value: null sweep");
    if (row >= sweep->result.rows.size() || col >= sweep->result.columns.size())
        return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_value: index out of range");
    const auto& st = sweep->result.rows[row].stats[col];
    if (mean_db) *mean_db = st.mean_db;
    if (ci95_db) *ci95_db = st.ci95_db;
    return FDPN_OK;
}

fdpn_status fdpn_sweep_csv(const fdpn_sweep* sweep, char** out_text) {
    if (!sweep || !out_text) return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_csv: null argument");
    *out_text = nullptr;
    return guarded([&] { *out_text = dup_string(fdpn::sweep_csv(sweep->result)); });
}

fdpn_status fdpn_sweep_write_csv(const fdpn_sweep* sweep, const char* path) {
    if (!sweep || !path) return fail(FDPN_ERR_ARGUMENT, "fdpn_sweep_write_csv: null argument");
    return guarded([&] { fdpn::write_text_file(path, fdpn::sweep_csv(sweep->result)); });
}

fdpn_status fdpn_single_write_csv(const fdpn_config* cfg, const char* path) {
    if (!cfg || !path) return fail(FDPN_ERR_ARGUMENT, "fdpn_single_write_csv: null argument");
    return guarded([&] { fdpn::write_text_file(path, fdpn::run_single_dump(cfg->cfg)); });
}

fdpn_status fdpn_opcount_table(const fdpn_config* cfg, char** out_text) {
    if (!cfg || !out_text) return fail(FDPN_ERR_ARGUMENT, "fdpn_opcount_table: null argument");
    *out_text = nullptr;
    return guarded([&] { *out_text = dup_string(fdpn::run_opcount(cfg->cfg)); });
}

fdpn_status fdpn_selftest(char** out_report) {
    if (!out_report) return fail(FDPN_ERR_ARGUMENT, "fdpn_selftest: null argument");
    *out_report = nullptr;
    bool passed = false;
    const auto st = guarded([&] {
        const auto rep = fdpn::run_selftest();
        passed = rep.passed;
        *out_report = dup_string(rep.text);
    });
    if (st != FDPN_OK) return st;
    return passed ? FDPN_OK : fail(FDPN_ERR_INTERNAL, "self-test failed");
}

}  // extern "C"

#include "fdpn/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fdpn {

namespace {

enum class ValueType { Real, Count, Seed, OptionalReal, Choice, RealList };

struct KeySpec {
    const char* key;
    ValueType type;
    const char* default_value;
    const char* choices;  // '|' separated, Choice only
};

// clang-format off
constexpr KeySpec kKeys[] = {
    {"ofdm.n_fft",              ValueType::Count,        "1024",  nullptr},
    {"ofdm.n_used",             ValueType::Count,        "300",   nullptr},
    {"ofdm.cp_len",             ValueType::Count,        "72",    nullptr},
    {"ofdm.qam_order",          ValueType::Count,        "16",    nullptr},
    {"ofdm.sample_rate",        ValueType::Real,         "15.36e6", nullptr},
    {"ofdm.n_symbols",          ValueType::Count,        "64",    nullptr},
    {"pn.beta_hz",              ValueType::Real,         "10",    nullptr},
    {"pn.osc_mode",             ValueType::Choice,       "common", "common|independent"},
    {"pn.inject_phase_rad",     ValueType::OptionalReal, "",      nullptr},
    {"si_channel.k_db",         ValueType::Real,         "30",    nullptr},
    {"si_channel.n_taps",       ValueType::Count,        "2",     nullptr},
    {"si_channel.decay_db",     ValueType::Real,         "20",    nullptr},
    {"soi_channel.k_db",        ValueType::Real,         "6",     nullptr},
    {"soi_channel.n_taps",      ValueType::Count,        "4",     nullptr},
    {"soi_channel.decay_db",    ValueType::Real,         "4",     nullptr},
    {"channel.err_rel_db",      ValueType::Real,         "-40",   nullptr},
    {"link.antenna_sep_db",     ValueType::Real,         "30",    nullptr},
    {"link.analog_sic_db",      ValueType::Real,         "30",    nullptr},
    {"link.sir_at_digital_db",  ValueType::OptionalReal, "-30",   nullptr},
    {"link.atten_diff_db",      ValueType::OptionalReal, "",      nullptr},
    {"link.snr_soi_db",         ValueType::Real,         "25",    nullptr},
    {"estimator.kind",          ValueType::Choice,       "wf",    "wf|only_cpe|lpf"},
    {"estimator.window_m",      ValueType::Count,        "35",    nullptr},
    {"estimator.lpf_len_l",     ValueType::Count,        "50",    nullptr},
    {"estimator.lpf_kind",      ValueType::Choice,       "moving_average", "moving_average|windowed_sinc"},
    {"run.seed",                ValueType::Seed,         "1",     nullptr},
    {"run.n_trials",            ValueType::Count,        "200",   nullptr},
    {"run.threads",             ValueType::Count,        "1",     nullptr},
    {"sweep.values",            ValueType::RealList,     "",      nullptr},
    {"sweep.sir_values",        ValueType::RealList,     "",      nullptr},
};
// clang-format on

const KeySpec* find_key(std::string_view key) {
    for (const auto& k : kKeys)
        if (key == k.key) return &k;
    return nullptr;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_real(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end && std::isfinite(out);
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

std::vector<double> parse_list(std::string_view s, bool& ok) {
    std::vector<double> out;
    ok = true;
    s = trim(s);
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto item = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        double v = 0;
        if (!parse_real(item, v)) {
            ok = false;
            return {};
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

// Returns an error description, or empty if the value is acceptable.
std::string check_value(const KeySpec& spec, std::string_view value) {
    const std::string v(trim(value));
    switch (spec.type) {
        case ValueType::Real: {
            double d;
            return parse_real(v, d) ? "" : "expected a finite number";
        }
        case ValueType::OptionalReal: {
            double d;
            return (v.empty() || parse_real(v, d)) ? "" : "expected a finite number or nothing";
        }
        case ValueType::Count: {
            std::uint64_t n;
            return parse_u64(v, n) ? "" : "expected a non-negative integer";
        }
        case ValueType::Seed: {
            std::uint64_t n;
            return parse_u64(v, n) ? "" : "expected an unsigned 64-bit integer";
        }
        case ValueType::Choice: {
            std::string_view choices = spec.choices;
            std::size_t pos = 0;
            while (pos <= choices.size()) {
                const auto bar = choices.find('|', pos);
                if (choices.substr(pos, bar - pos) == v) return "";
                if (bar == std::string_view::npos) break;
                pos = bar + 1;
            }
            return std::string("expected one of ") + spec.choices;
        }
        case ValueType::RealList: {
            bool ok;
            parse_list(v, ok);
            return ok ? "" : "expected a comma-separated list of numbers";
        }
    }
    return "unsupported key type";
}

double real_of(const std::string& s) {
    double d = 0;
    parse_real(s, d);
    return d;
}

std::size_t count_of(const std::string& s) {
    std::uint64_t n = 0;
    parse_u64(s, n);
    return static_cast<std::size_t>(n);
}

}  // namespace

const char* sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::Beta: return "beta";
        case SweepKind::AttenDiff: return "atten";
        case SweepKind::Window: return "window";
    }
    return "?";
}

RunConfig RunConfig::parse(std::string_view text, const std::string& origin) {
    RunConfig cfg;
    cfg.origin_ = origin;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
        ++line_no;

        if (!trim(raw).empty()) cfg.source_lines_.emplace_back(trim(raw));
        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto where = origin + ":" + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        const KeySpec* spec = find_key(key);
        if (!spec) throw ConfigError(where + "unknown key '" + key + "'");
        if (cfg.explicit_.count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
        if (auto err = check_value(*spec, value); !err.empty())
            throw ConfigError(where + key + ": " + err + " (got '" + value + "')");
        cfg.explicit_[key] = value;
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError("unknown key '" + key + "'");
    if (auto err = check_value(*spec, value); !err.empty())
        throw ConfigError(key + ": " + err + " (got '" + value + "')");
    explicit_[key] = std::string(trim(value));
}

std::string RunConfig::get(const std::string& key) const {
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError("unknown key '" + key + "'");
    if (auto it = explicit_.find(key); it != explicit_.end()) return it->second;
    // The SIR default only applies when the attenuation difference is not given.
    if (key == "link.sir_at_digital_db" && is_set("link.atten_diff_db")) return "";
    return spec->default_value;
}

std::vector<std::string> RunConfig::known_keys() {
    std::vector<std::string> keys;
    for (const auto& k : kKeys) keys.emplace_back(k.key);
    return keys;
}

std::vector<std::pair<std::string, std::string>> RunConfig::effective() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : known_keys()) out.emplace_back(k, get(k));
    std::sort(out.begin(), out.end());
    return out;
}

LinkScenario RunConfig::scenario() const {
    LinkScenario s;
    s.ofdm.n_fft = count_of(get("ofdm.n_fft"));
    const std::size_t n_used = count_of(get("ofdm.n_used"));
    if (n_used >= s.ofdm.n_fft) throw ConfigError("ofdm.n_used must be smaller than ofdm.n_fft");
    s.ofdm.used_subcarriers = OfdmConfig::symmetric_used_subcarriers(s.ofdm.n_fft, n_used);
    s.ofdm.cp_len = count_of(get("ofdm.cp_len"));
    s.ofdm.qam_order = static_cast<unsigned>(count_of(get("ofdm.qam_order")));
    s.ofdm.sample_rate = real_of(get("ofdm.sample_rate"));
    s.ofdm.n_symbols = count_of(get("ofdm.n_symbols"));

    s.beta_hz = real_of(get("pn.beta_hz"));
    s.osc_mode = get("pn.osc_mode") == "independent" ? OscillatorMode::Independent : OscillatorMode::Common;
    if (const auto v = get("pn.inject_phase_rad"); !v.empty()) s.inject_phase_rad = real_of(v);

    s.si_channel = {real_of(get("si_channel.k_db")), count_of(get("si_channel.n_taps")),
                    real_of(get("si_channel.decay_db"))};
    s.soi_channel = {real_of(get("soi_channel.k_db")), count_of(get("soi_channel.n_taps")),
                     real_of(get("soi_channel.decay_db"))};
    s.ch_err_rel_db = real_of(get("channel.err_rel_db"));

    s.antenna_sep_db = real_of(get("link.antenna_sep_db"));
    s.analog_sic_db = real_of(get("link.analog_sic_db"));
    s.sir_at_digital_db.reset();
    if (const auto v = get("link.sir_at_digital_db"); !v.empty()) s.sir_at_digital_db = real_of(v);
    if (const auto v = get("link.atten_diff_db"); !v.empty()) s.atten_diff_db = real_of(v);
    s.snr_soi_db = real_of(get("link.snr_soi_db"));

    const auto kind = get("estimator.kind");
    s.estimator.kind = kind == "only_cpe" ? EstimatorKind::OnlyCpe
                       : kind == "lpf"    ? EstimatorKind::LpfBased
                                          : EstimatorKind::WfWindow;
    s.estimator.window_m = count_of(get("estimator.window_m"));
    s.estimator.lpf_len_l = count_of(get("estimator.lpf_len_l"));
    s.estimator.lpf_kind =
        get("estimator.lpf_kind") == "windowed_sinc" ? LpfKind::WindowedSinc : LpfKind::MovingAverage;

    std::uint64_t seed = 0;
    parse_u64(get("run.seed"), seed);
    s.seed = seed;
    s.n_trials = count_of(get("run.n_trials"));
    s.threads = static_cast<unsigned>(count_of(get("run.threads")));

    s.validate();
    return s;
}

std::vector<double> RunConfig::sweep_values(SweepKind kind) const {
    bool ok = true;
    auto v = parse_list(get("sweep.values"), ok);
    if (!v.empty()) return v;
    switch (kind) {
        case SweepKind::Beta: return {1, 10, 100, 1000, 10000};
        case SweepKind::AttenDiff: {
            std::vector<double> d;
            for (int x = -60; x <= -30; x += 3) d.push_back(x);
            return d;
        }
        case SweepKind::Window: {
            const auto s = scenario();
            const double sym = static_cast<double>(s.ofdm.symbol_len());
            return {1, 5, 15, 35, 70, 150, std::floor(sym / 2.0), sym};
        }
    }
    return v;
}

std::vector<double> RunConfig::sweep_sir_values() const {
    bool ok = true;
    return parse_list(get("sweep.sir_values"), ok);
}

}  // namespace fdpn

#include "fdpn/link_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace fdpn {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void validate_channel(const ChannelParams& c, const char* name) {
    if (c.n_taps < 1) throw ConfigError(std::string(name) + ": n_taps must be >= 1");
    if (!std::isfinite(c.k_db) || !std::isfinite(c.decay_db))
        throw ConfigError(std::string(name) + ": K-factor and decay must be finite");
}

std::vector<std::uint8_t> random_bits(std::size_t n, RngStream& rng) {
    std::vector<std::uint8_t> bits(n);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = rng.next_u64();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

ComplexSignal random_frame(const OfdmConfig& cfg, RngStream& rng) {
    const auto bits = random_bits(cfg.data_symbols() * qam_bits_per_symbol(cfg.qam_order), rng);
    return ofdm_modulate(qam_map(bits, cfg.qam_order), cfg);
}

ComplexSignal scaled(const ComplexSignal& x, double g) {
    std::vector<cplx> out(x.vec());
    for (auto& v : out) v *= g;
    return ComplexSignal(std::move(out), x.sample_rate());
}

ComplexSignal zeros_like(const ComplexSignal& x) {
    return ComplexSignal(std::vector<cplx>(x.size()), x.sample_rate());
}

// Received component ((x e^{j tx}) * h) e^{j rx}.
ComplexSignal through_link(const ComplexSignal& x, const PhasePath& tx, std::span<const cplx> taps,
                           const PhasePath& rx) {
    return apply_pn(apply_channel(apply_pn(x, tx), taps), rx);
}

}  // namespace

double LinkScenario::effective_sir_db() const {
    if (sir_at_digital_db) return *sir_at_digital_db;
    if (*atten_diff_db <= -kOffDb) return *atten_diff_db;  // SOI switched off
    return *atten_diff_db + analog_sic_db;
}

void LinkScenario::validate() const {
    ofdm.validate();
    pn_params().validate();
    if (inject_phase_rad && !std::isfinite(*inject_phase_rad))
        throw ConfigError("scenario: injected phase must be finite");
    validate_channel(si_channel, "si_channel");
    validate_channel(soi_channel, "soi_channel");
    if (sir_at_digital_db.has_value() == atten_diff_db.has_value())
        throw ConfigError("scenario: set exactly one of sir_at_digital_db and atten_diff_db");
    for (double v : {ch_err_rel_db, antenna_sep_db, analog_sic_db, snr_soi_db, effective_sir_db()})
        if (!std::isfinite(v)) throw ConfigError("scenario: levels must be finite");
    estimator.validate();
    if (n_trials < 1) throw ConfigError("scenario: n_trials must be >= 1");
    if (threads < 1) throw ConfigError("scenario: threads must be >= 1");
}

TrialArtifacts simulate_trial(const LinkScenario& s, std::size_t trial_index) {
    s.validate();
    const RngStream root = RngStream(s.seed, "fdpn").fork("trial").fork(std::to_string(trial_index));
    RngStream si_bits = root.fork("si_bits");
    RngStream soi_bits = root.fork("soi_bits");
    RngStream pn_si = root.fork("pn_si_tx");
    RngStream pn_rx = root.fork("pn_rx");
    RngStream pn_soi = root.fork("pn_soi_tx");
    RngStream ch_si = root.fork("ch_si");
    RngStream ch_soi = root.fork("ch_soi");
    RngStream ch_err = root.fork("ch_err");
    RngStream awgn = root.fork("awgn");

    const std::size_t n = s.ofdm.frame_len();
    TrialArtifacts a;
    a.x_si = random_frame(s.ofdm, si_bits);
    const ComplexSignal x_soi = random_frame(s.ofdm, soi_bits);

    PhasePath si_tx, rx, soi_tx;
    if (s.inject_phase_rad) {
        si_tx = PhasePath::constant(n, 0.0);
        soi_tx = si_tx;
        rx = PhasePath::constant(n, *s.inject_phase_rad);
    } else {
        const auto pn = s.pn_params();
        si_tx = gen_wiener_pn(pn, n, pn_si);
        rx = (s.osc_mode == OscillatorMode::Common) ? si_tx : gen_wiener_pn(pn, n, pn_rx);
        soi_tx = gen_wiener_pn(pn, n, pn_soi);
    }
    a.true_phase = combined_pn(si_tx, rx);

    // SI: calibrate the channel so the frame's SI power at the digital input is 1.
    a.si_channel = gen_rician_channel(s.si_channel.k_db, s.si_channel.n_taps,
                                      exponential_pdp(s.si_channel.n_taps, s.si_channel.decay_db), ch_si);
    {
        const double p = through_link(a.x_si, si_tx, a.si_channel.taps, rx).power();
        const double g = 1.0 / std::sqrt(p);
        for (auto& t : a.si_channel.taps) t *= g;
    }
    a.si_true = through_link(a.x_si, si_tx, a.si_channel.taps, rx);
    a.si_estimate = perturb_channel_estimate(a.si_channel, s.ch_err_rel_db, ch_err);
    a.u = reference_signal(a.x_si, a.si_estimate);

    const double sir_db = s.effective_sir_db();
    const double soi_power = std::pow(10.0, sir_db / 10.0);
    if (sir_db <= -kOffDb) {
        a.soi = zeros_like(a.si_true);
    } else {
        const auto h_soi = gen_rician_channel(s.soi_channel.k_db, s.soi_channel.n_taps,
                                              exponential_pdp(s.soi_channel.n_taps, s.soi_channel.decay_db),
                                              ch_soi);
        const auto raw = through_link(x_soi, soi_tx, h_soi.taps, rx);
        a.soi = scaled(raw, std::sqrt(soi_power / raw.power()));
    }

    if (sir_db <= -kOffDb || s.snr_soi_db >= kOffDb) {
        a.noise = zeros_like(a.si_true);
    } else {
        a.noise = add_awgn(zeros_like(a.si_true), s.snr_soi_db, soi_power, awgn);
    }

    std::vector<cplx> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = a.si_true[i] + a.soi[i] + a.noise[i];
    a.y = ComplexSignal(std::move(y), s.ofdm.sample_rate);
    return a;
}

void apply_estimator(TrialArtifacts& a, const EstimatorConfig& est, const OfdmConfig& ofdm) {
    a.phi_hat = estimate_phase(a.y.samples(), a.u.samples(), est, ofdm);
    a.residual = mitigate_and_cancel(a.y.samples(), a.u.samples(), a.phi_hat);
}

TrialArtifacts run_trial(const LinkScenario& s, std::size_t trial_index) {
    auto a = simulate_trial(s, trial_index);
    apply_estimator(a, s.estimator, s.ofdm);
    return a;
}

double si_suppression_db(std::span<const cplx> si_true, std::span<const cplx> u,
                         const PhaseEstimate& phi) {
    if (si_true.size() != u.size() || phi.size() != u.size())
        throw InputError("si_suppression_db: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        num += std::norm(si_true[i]);
        const cplx rot{std::cos(phi.phases[i]), std::sin(phi.phases[i])};
        den += std::norm(si_true[i] - u[i] * rot);
    }
    if (num == 0.0) throw MetricError("si_suppression_db: SI component has zero power");
    if (den == 0.0) return kSuppressionCapDb;
    return std::min(kSuppressionCapDb, 10.0 * std::log10(num / den));
}

double si_suppression_db(const TrialArtifacts& a) {
    return si_suppression_db(a.si_true.samples(), a.u.samples(), a.phi_hat);
}

std::size_t SweepResult::column(const std::string& label) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == label) return i;
    throw InputError("sweep result has no column '" + label + "'");
}

SweepStat summarize(std::span<const double> values) {
    SweepStat st;
    if (values.empty()) return st;
    double sum = 0.0;
    for (double v : values) sum += v;
    const double n = static_cast<double>(values.size());
    st.mean_db = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - st.mean_db) * (v - st.mean_db);
        st.ci95_db = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return st;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

namespace {

std::vector<EstimatorConfig> baseline_set(const EstimatorConfig& tmpl) {
    EstimatorConfig wf = tmpl, cpe = tmpl, lpf = tmpl;
    wf.kind = EstimatorKind::WfWindow;
    cpe.kind = EstimatorKind::OnlyCpe;
    lpf.kind = EstimatorKind::LpfBased;
    return {wf, cpe, lpf};
}

// Evaluates every estimator on the same simulated trials for each x value.
// per_trial[x][est][trial] is filled in trial order, so the summary does not
// depend on scheduling.
template <typename Modify>
SweepResult sweep_estimators(const LinkScenario& tmpl, std::span<const double> xs, std::string x_name,
                             Modify modify) {
    tmpl.validate();
    const auto ests = baseline_set(tmpl.estimator);
    SweepResult r;
    r.x_name = std::move(x_name);
    for (const auto& e : ests) r.columns.push_back(e.label());
    r.metadata = describe(tmpl);

    for (double x : xs) {
        LinkScenario s = tmpl;
        modify(s, x);
        s.validate();
        std::vector<std::vector<double>> vals(ests.size(), std::vector<double>(s.n_trials));
        parallel_for(s.n_trials, s.threads, [&](std::size_t t) {
            auto a = simulate_trial(s, t);
            for (std::size_t e = 0; e < ests.size(); ++e) {
                a.phi_hat = estimate_phase(a.y.samples(), a.u.samples(), ests[e], s.ofdm);
                vals[e][t] = si_suppression_db(a);
            }
        });
        SweepResult::Row row{x, {}};
        for (const auto& v : vals) row.stats.push_back(summarize(v));
        r.rows.push_back(std::move(row));
    }
    return r;
}

}  // namespace

SweepResult sweep_beta(const LinkScenario& tmpl, std::span<const double> betas) {
    auto r = sweep_estimators(tmpl, betas, "beta_hz", [](LinkScenario& s, double b) { s.beta_hz = b; });
    r.metadata.emplace_back("sweep", "beta");
    return r;
}

SweepResult sweep_atten_diff(const LinkScenario& tmpl, std::span<const double> diffs) {
    auto r = sweep_estimators(tmpl, diffs, "atten_diff_db", [](LinkScenario& s, double d) {
        s.sir_at_digital_db.reset();
        s.atten_diff_db = d;
    });
    r.metadata.emplace_back("sweep", "atten_diff");
    return r;
}

SweepResult sweep_window(const LinkScenario& tmpl, std::span<const std::size_t> windows,
                         std::span<const double> sirs) {
    tmpl.validate();
    std::vector<double> sir_list(sirs.begin(), sirs.end());
    const bool multi = !sir_list.empty();
    if (!multi) sir_list.push_back(tmpl.effective_sir_db());

    SweepResult r;
    r.x_name = "window_m";
    r.metadata = describe(tmpl);
    r.metadata.emplace_back("sweep", "window");
    for (double sir : sir_list) {
        const std::string suffix = multi ? "_sir" + num(sir) : "";
        r.columns.push_back("wf" + suffix);
        r.columns.push_back("only_cpe" + suffix);
    }
    for (std::size_t m : windows) r.rows.push_back({static_cast<double>(m), {}});

    for (double sir : sir_list) {
        LinkScenario s = tmpl;
        s.atten_diff_db.reset();
        s.sir_at_digital_db = sir;
        s.validate();
        // vals[w][t] for each window; the last slot is the OnlyCpe reference.
        std::vector<std::vector<double>> vals(windows.size() + 1, std::vector<double>(s.n_trials));
        EstimatorConfig cpe = s.estimator;
        cpe.kind = EstimatorKind::OnlyCpe;
        parallel_for(s.n_trials, s.threads, [&](std::size_t t) {
            auto a = simulate_trial(s, t);
            for (std::size_t w = 0; w < windows.size(); ++w) {
                a.phi_hat = wf_estimate(a.y.samples(), a.u.samples(), windows[w]);
                vals[w][t] = si_suppression_db(a);
            }
            a.phi_hat = estimate_phase(a.y.samples(), a.u.samples(), cpe, s.ofdm);
            vals[windows.size()][t] = si_suppression_db(a);
        });
        const SweepStat cpe_stat = summarize(vals.back());
        for (std::size_t w = 0; w < windows.size(); ++w) {
            r.rows[w].stats.push_back(summarize(vals[w]));
            r.rows[w].stats.push_back(cpe_stat);
        }
    }
    return r;
}

std::vector<std::pair<std::string, std::string>> describe(const LinkScenario& s) {
    const char* kinds[] = {"wf", "only_cpe", "lpf"};
    std::vector<std::pair<std::string, std::string>> d{
        {"ofdm.n_fft", num(static_cast<double>(s.ofdm.n_fft))},
        {"ofdm.n_used", num(static_cast<double>(s.ofdm.used_subcarriers.size()))},
        {"ofdm.cp_len", num(static_cast<double>(s.ofdm.cp_len))},
        {"ofdm.qam_order", num(s.ofdm.qam_order)},
        {"ofdm.sample_rate", num(s.ofdm.sample_rate)},
        {"ofdm.n_symbols", num(static_cast<double>(s.ofdm.n_symbols))},
        {"pn.beta_hz", num(s.beta_hz)},
        {"pn.osc_mode", s.osc_mode == OscillatorMode::Common ? "common" : "independent"},
        {"pn.inject_phase_rad", s.inject_phase_rad ? num(*s.inject_phase_rad) : ""},
        {"si_channel.k_db", num(s.si_channel.k_db)},
        {"si_channel.n_taps", num(static_cast<double>(s.si_channel.n_taps))},
        {"si_channel.decay_db", num(s.si_channel.decay_db)},
        {"soi_channel.k_db", num(s.soi_channel.k_db)},
        {"soi_channel.n_taps", num(static_cast<double>(s.soi_channel.n_taps))},
        {"soi_channel.decay_db", num(s.soi_channel.decay_db)},
        {"channel.err_rel_db", num(s.ch_err_rel_db)},
        {"link.antenna_sep_db", num(s.antenna_sep_db)},
        {"link.analog_sic_db", num(s.analog_sic_db)},
        {"link.sir_at_digital_db", s.sir_at_digital_db ? num(*s.sir_at_digital_db) : ""},
        {"link.atten_diff_db", s.atten_diff_db ? num(*s.atten_diff_db) : ""},
        {"link.snr_soi_db", num(s.snr_soi_db)},
        {"estimator.kind", kinds[static_cast<int>(s.estimator.kind)]},
        {"estimator.window_m", num(static_cast<double>(s.estimator.window_m))},
        {"estimator.lpf_len_l", num(static_cast<double>(s.estimator.lpf_len_l))},
        {"estimator.lpf_kind",
         s.estimator.lpf_kind == LpfKind::MovingAverage ? "moving_average" : "windowed_sinc"},
        {"run.seed", std::to_string(s.seed)},
        {"run.n_trials", std::to_string(s.n_trials)},
    };
    return d;
}

}  // namespace fdpn

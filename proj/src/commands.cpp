#include "fdpn/commands.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "fdpn/pn_spectral.hpp"

namespace fdpn {

namespace {

std::vector<std::pair<std::string, std::string>> run_metadata(const RunConfig& cfg, const std::string& command) {
    std::vector<std::pair<std::string, std::string>> md{
        {"tool", std::string("fdpn ") + kVersion},
        {"command", command},
        {"metric", kMetricDefinition},
        {"seed", cfg.get("run.seed")},
    };
    for (auto& kv : cfg.effective()) md.push_back(std::move(kv));
    for (const auto& line : cfg.source_lines()) md.emplace_back("input", line);
    return md;
}

}  // namespace

SweepResult run_configured_sweep(const RunConfig& cfg, SweepKind kind) {
    const LinkScenario s = cfg.scenario();
    const auto xs = cfg.sweep_values(kind);
    SweepResult r;
    switch (kind) {
        case SweepKind::Beta:
            r = sweep_beta(s, xs);
            break;
        case SweepKind::AttenDiff:
            r = sweep_atten_diff(s, xs);
            break;
        case SweepKind::Window: {
            std::vector<std::size_t> ms;
            for (double v : xs) {
                if (!(v >= 1.0) || v != std::floor(v))
                    throw ConfigError("sweep.values: window sizes must be positive integers");
                ms.push_back(static_cast<std::size_t>(v));
            }
            const auto sirs = cfg.sweep_sir_values();
            r = sweep_window(s, ms, sirs);
            break;
        }
    }
    r.metadata = run_metadata(cfg, std::string("sweep-") + sweep_kind_name(kind));
    return r;
}

std::string run_single_dump(const RunConfig& cfg) {
    const LinkScenario s = cfg.scenario();
    const auto a = run_trial(s, 0);
    auto md = run_metadata(cfg, "single");
    md.emplace_back("si_suppression_db", format_number(si_suppression_db(a)));
    return single_dump_csv(a, md);
}

std::string run_opcount(const RunConfig& cfg) {
    const LinkScenario s = cfg.scenario();
    OpCountParams p;
    p.window_m = s.estimator.window_m;
    p.lpf_len_l = s.estimator.lpf_len_l;
    p.samples_per_symbol = s.ofdm.n_fft;
    p.symbol_len = s.ofdm.symbol_len();
    return opcount_tsv(p, s.ofdm.frame_len());
}

SelftestReport run_selftest() {
    SelftestReport rep;
    auto check = [&](const std::string& name, const std::function<std::string()>& fn) {
        std::string detail;
        try {
            detail = fn();
        } catch (const std::exception& e) {
            detail = e.what();
        }
        if (detail.empty()) {
            rep.text += "PASS " + name + "\n";
        } else {
            rep.passed = false;
            rep.text += "FAIL " + name + ": " + detail + "\n";
        }
    };

    check("dft_tone", [] {
        std::vector<cplx> x(4);
        for (std::size_t n = 0; n < 4; ++n) x[n] = std::polar(1.0, 2.0 * std::numbers::pi * n / 4.0);
        const auto X = dft(x, 4);
        const double err = std::abs(X[0]) + std::abs(X[1] - 4.0) + std::abs(X[2]) + std::abs(X[3]);
        return err < 1e-12 ? std::string() : "tone not in bin 1";
    });

    check("pn_duality", [] {
        RngStream rng(7, "selftest");
        const std::size_t n = 8;
        std::vector<cplx> x(n);
        std::vector<double> phi(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.complex_gaussian();
            phi[i] = rng.gaussian();
        }
        const ComplexSignal xs(x, 1.0);
        const auto lhs = dft(apply_pn(xs, PhasePath{phi}).samples(), n);
        const auto rhs = circular_convolve_normalized(dft(x, n), pn_dft(phi, n).j);
        double err = 0, ref = 0;
        for (std::size_t k = 0; k < n; ++k) {
            err += std::norm(lhs[k] - rhs[k]);
            ref += std::norm(lhs[k]);
        }
        return std::sqrt(err / ref) < 1e-9 ? std::string() : "duality residual too large";
    });

    LinkScenario base;
    base.ofdm.n_symbols = 2;
    base.n_trials = 1;
    base.sir_at_digital_db = -kOffDb;
    base.snr_soi_db = kOffDb;
    base.ch_err_rel_db = -kOffDb;

    for (auto kind : {EstimatorKind::WfWindow, EstimatorKind::OnlyCpe, EstimatorKind::LpfBased}) {
        LinkScenario s = base;
        s.beta_hz = 0.0;
        s.estimator.kind = kind;
        check("zero_impairment_" + s.estimator.label(), [&] {
            const double db = si_suppression_db(run_trial(s, 0));
            return db >= kSuppressionCapDb ? std::string() : "suppression " + format_number(db);
        });
        s.inject_phase_rad = std::numbers::pi / 7.0;
        check("constant_phase_" + s.estimator.label(), [&] {
            const auto a = run_trial(s, 0);
            for (double p : a.phi_hat.phases)
                if (std::abs(p - *s.inject_phase_rad) > 1e-9) return std::string("phase off");
            return std::string();
        });
    }

    check("wiener_variance", [] {
        RngStream rng(3, "selftest");
        const PhaseNoiseParams p{10.0, 1.0 / 15.36e6};
        const auto path = gen_wiener_pn(p, 200001, rng);
        double ss = 0;
        for (std::size_t i = 1; i < path.size(); ++i) {
            const double d = path.phases[i] - path.phases[i - 1];
            ss += d * d;
        }
        const double var = ss / static_cast<double>(path.size() - 1);
        return std::abs(var / p.increment_variance() - 1.0) < 0.05 ? std::string() : "variance off";
    });
    return rep;
}

}  // namespace fdpn

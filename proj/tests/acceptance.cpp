// Acceptance gate. Prints one "criterion N: PASS|FAIL ..." line per
// criterion and exits nonzero if any selected criterion fails.
//
//   acceptance                 all criteria
//   acceptance --criterion N   only criterion N

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fdpn/commands.hpp"
#include "fdpn/pn_spectral.hpp"

using namespace fdpn;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double wrap_dist(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * pi)); }

std::vector<cplx> random_vec(std::size_t n, RngStream& rng) {
    std::vector<cplx> x(n);
    for (auto& v : x) v = rng.complex_gaussian();
    return x;
}

double rel_err(std::span<const cplx> a, std::span<const cplx> b) {
    double e = 0, r = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        e += std::norm(a[k] - b[k]);
        r += std::norm(b[k]);
    }
    return std::sqrt(e / r);
}

LinkScenario impairment_free() {
    LinkScenario s;
    s.beta_hz = 0.0;
    s.ch_err_rel_db = -kOffDb;
    s.sir_at_digital_db = -kOffDb;
    s.snr_soi_db = kOffDb;
    s.n_trials = 1;
    return s;
}

const EstimatorKind kAllKinds[] = {EstimatorKind::WfWindow, EstimatorKind::OnlyCpe, EstimatorKind::LpfBased};

// 1. Small-instance oracles.
Outcome criterion_1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = 8;
    double worst_dual = 0, worst_split = 0, worst_wf = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RngStream rng(seed, "acceptance-1");
        const auto x = random_vec(n, rng);
        std::vector<double> phi(n);
        for (auto& p : phi) p = pi * (2.0 * rng.uniform() - 1.0);
        const cplx h = rng.complex_gaussian();

        // Time-domain products, transformed by a direct O(N^2) sum.
        std::vector<cplx> rot(n), rot_h(n);
        for (std::size_t i = 0; i < n; ++i) {
            rot[i] = x[i] * std::polar(1.0, phi[i]);
            rot_h[i] = h * rot[i];
        }
        auto direct = [&](const std::vector<cplx>& v) {
            std::vector<cplx> out(n);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    out[k] += v[i] * std::polar(1.0, -2.0 * pi * double(i * k % n) / double(n));
            return out;
        };
        const auto oracle = direct(rot);
        const auto oracle_h = direct(rot_h);

        const auto J = pn_dft(phi, n);
        const auto conv = circular_convolve_normalized(dft(x, n), J.j);
        worst_dual = std::max(worst_dual, rel_err(conv.bins, oracle));

        const auto split = cpe_ici_split(dft(x, n), SpectrumVector{std::vector<cplx>(n, h)}, J);
        std::vector<cplx> sum(n);
        for (std::size_t k = 0; k < n; ++k) sum[k] = split.cpe_term[k] + split.ici_term[k];
        worst_split = std::max(worst_split, rel_err(sum, oracle_h));

        const auto u = random_vec(n, rng);
        const auto y = random_vec(n, rng);
        for (std::size_t m = 1; m <= 4; ++m) {
            const auto est = wf_estimate(y, u, m);
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t w = i / m;
                cplx num = 0;
                double den = 0;
                for (std::size_t j = w * m; j < std::min(n, (w + 1) * m); ++j) {
                    num += y[j] * std::conj(u[j]);
                    den += std::norm(u[j]);
                }
                worst_wf = std::max(worst_wf, wrap_dist(est.phases[i], std::arg(num / den)));
            }
        }
    }
    const double secs = seconds_since(t0);
    o.require(worst_dual <= 1e-9, "duality " + fmt("%.3g", worst_dual));
    o.require(worst_split <= 1e-9, "split " + fmt("%.3g", worst_split));
    o.require(worst_wf <= 1e-12, "wf " + fmt("%.3g", worst_wf));
    o.require(secs < 5.0, "runtime " + fmt("%.2f s", secs));
    o.note("duality " + fmt("%.2e", worst_dual) + ", split " + fmt("%.2e", worst_split) + ", wf " +
           fmt("%.2e", worst_wf) + ", " + fmt("%.2f s", secs));
    return o;
}

// 2. Zero impairments hit the suppression cap.
Outcome criterion_2() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    auto s = impairment_free();
    for (auto kind : kAllKinds) {
        s.estimator.kind = kind;
        const double db = si_suppression_db(run_trial(s, 0));
        o.require(db == kSuppressionCapDb, s.estimator.label() + " " + fmt("%.3f dB", db));
    }
    const double secs = seconds_since(t0);
    o.require(secs < 5.0, "runtime " + fmt("%.2f s", secs));
    o.note(fmt("%.2f s", secs));
    return o;
}

// 3. Constant injected phase is recovered exactly.
Outcome criterion_3() {
    Outcome o;
    auto s = impairment_free();
    double worst = 0, lowest = kSuppressionCapDb;
    for (double c : {pi / 7.0, -2.9, 3.1}) {
        s.inject_phase_rad = c;
        for (auto kind : kAllKinds) {
            s.estimator.kind = kind;
            const auto a = run_trial(s, 0);
            for (double p : a.phi_hat.phases) worst = std::max(worst, wrap_dist(p, c));
            lowest = std::min(lowest, si_suppression_db(a));
        }
    }
    o.require(worst <= 1e-9, "phase error " + fmt("%.3g", worst));
    o.require(lowest == kSuppressionCapDb, "suppression " + fmt("%.3f", lowest));
    o.note("max phase error " + fmt("%.2e rad", worst));
    return o;
}

// 4. Wiener increments: variance and kurtosis.
Outcome criterion_4() {
    Outcome o;
    const double beta = 10.0, ts = 1.0 / 15.36e6;
    const double expected = 2.0 * pi * beta * ts;  // 4.0906e-6 rad^2
    RngStream rng(2024, "acceptance-4");
    const auto path = gen_wiener_pn({beta, ts}, 1000001, rng);
    double m2 = 0, m4 = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double d = path.phases[i] - path.phases[i - 1];
        m2 += d * d;
        m4 += d * d * d * d;
    }
    const double n = double(path.size() - 1);
    // Zero-mean increments; the sample mean is negligible against sigma.
    const double var = m2 / n;
    const double kurt = (m4 / n) / (var * var);
    o.require(std::abs(var / expected - 1.0) <= 0.05, "variance " + fmt("%.5e", var));
    o.require(kurt >= 2.8 && kurt <= 3.2, "kurtosis " + fmt("%.4f", kurt));
    o.note("variance " + fmt("%.5e", var) + " vs " + fmt("%.5e", expected) + ", kurtosis " + fmt("%.4f", kurt));
    return o;
}

std::string row_summary(const SweepResult& r, const std::vector<std::string>& cols) {
    std::string out;
    for (const auto& row : r.rows) {
        out += (out.empty() ? "" : " | ") + fmt("%g:", row.x);
        for (const auto& c : cols) out += " " + c + "=" + fmt("%.2f", row.stats[r.column(c)].mean_db);
    }
    return out;
}

// 5. Suppression versus phase-noise bandwidth.
Outcome criterion_5() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    LinkScenario s;
    s.ofdm.n_symbols = 8;
    s.n_trials = 200;
    s.sir_at_digital_db = -30.0;
    const std::vector<double> betas{1, 10, 100, 1000, 10000};
    const auto r = sweep_beta(s, betas);
    const double secs = seconds_since(t0);
    const auto wf = r.column("wf"), cpe = r.column("only_cpe"), lpf = r.column("lpf");
    auto mean = [&](std::size_t row, std::size_t col) { return r.rows[row].stats[col].mean_db; };

    for (std::size_t c : {wf, cpe, lpf})
        for (std::size_t i = 1; i < betas.size(); ++i)
            o.require(mean(i, c) <= mean(i - 1, c) + 0.5,
                      "(a) " + r.columns[c] + " rises at beta " + fmt("%g", betas[i]));
    for (std::size_t i : {std::size_t{3}, std::size_t{4}})
        o.require(mean(i, wf) >= mean(i, lpf),
                  "(b) wf < lpf at beta " + fmt("%g", betas[i]) + " by " + fmt("%.2f dB", mean(i, lpf) - mean(i, wf)));
    o.require(mean(4, wf) - mean(4, lpf) >= 2.0,
              "(b) margin at 10 kHz " + fmt("%.2f dB", mean(4, wf) - mean(4, lpf)) + " < 2 dB");
    for (std::size_t i = 2; i < betas.size(); ++i)
        o.require(mean(i, wf) >= mean(i, cpe), "(c) wf < only_cpe at beta " + fmt("%g", betas[i]));
    o.require(secs < 600.0, "runtime " + fmt("%.0f s", secs));
    o.note(row_summary(r, {"wf", "only_cpe", "lpf"}) + "; " + fmt("%.1f s", secs));
    return o;
}

// 6. Attenuation-difference crossover between WF and only-CPE.
Outcome criterion_6() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    LinkScenario s;
    s.beta_hz = 10.0;
    s.n_trials = 200;
    s.sir_at_digital_db.reset();
    s.atten_diff_db = -45.0;
    std::vector<double> diffs;
    for (int d = -60; d <= -30; d += 3) diffs.push_back(d);
    const auto r = sweep_atten_diff(s, diffs);
    const double secs = seconds_since(t0);
    const auto wf = r.column("wf"), cpe = r.column("only_cpe"), lpf = r.column("lpf");
    auto mean = [&](std::size_t row, std::size_t col) { return r.rows[row].stats[col].mean_db; };

    const std::size_t last = diffs.size() - 1;
    o.require(mean(last, cpe) > mean(last, wf) && mean(last, cpe) > mean(last, lpf),
              "only_cpe not best at " + fmt("%g dB", diffs[last]));
    int flips = 0;
    double where = std::nan("");
    for (std::size_t i = 1; i < diffs.size(); ++i) {
        const double a = mean(i - 1, wf) - mean(i - 1, cpe);
        const double b = mean(i, wf) - mean(i, cpe);
        if ((a >= 0) != (b >= 0)) {
            ++flips;
            where = diffs[i - 1] + (diffs[i] - diffs[i - 1]) * a / (a - b);
        }
    }
    o.require(flips == 1, "ordering flips " + std::to_string(flips) + " times");
    o.require(flips == 1 && where >= -51.0 && where <= -36.0, "flip at " + fmt("%.2f dB", where));
    o.require(secs < 600.0, "runtime " + fmt("%.0f s", secs));
    o.note("flip at " + fmt("%.2f dB", where) + "; " + row_summary(r, {"wf", "only_cpe", "lpf"}) + "; " +
           fmt("%.1f s", secs));
    return o;
}

// 7. Window-size optimum.
Outcome criterion_7() {
    Outcome o;
    LinkScenario s;
    s.beta_hz = 10.0;
    s.n_trials = 200;
    s.sir_at_digital_db = -30.0;
    const std::vector<std::size_t> ms{1, 5, 15, 35, 70, 150, 548, 1096};
    const auto r = sweep_window(s, ms);
    const auto wf = r.column("wf"), cpe = r.column("only_cpe");
    std::size_t best = 0;
    for (std::size_t i = 1; i < ms.size(); ++i)
        if (r.rows[i].stats[wf].mean_db > r.rows[best].stats[wf].mean_db) best = i;
    o.require(best != 0 && best != ms.size() - 1, "maximum at the edge");
    o.require(ms[best] >= 10 && ms[best] <= 100, "argmax M = " + std::to_string(ms[best]));
    const auto& full = r.rows.back().stats;
    o.require(full[wf].mean_db == full[cpe].mean_db && full[wf].ci95_db == full[cpe].ci95_db,
              "M = 1096 differs from only_cpe");
    o.note("argmax M = " + std::to_string(ms[best]) + "; " + row_summary(r, {"wf"}));
    return o;
}

// 8. Complexity table.
Outcome criterion_8() {
    Outcome o;
    const auto table = run_opcount(RunConfig::parse(""));
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);
    double wf = 0, lpf = 0, mmse = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string x; std::getline(ls, x, '\t');) f.push_back(x);
        if (f.size() != 7) {
            o.require(false, "malformed row");
            continue;
        }
        const double v = std::stod(f[2]);
        if (f[0] == "wf") wf = v;
        if (f[0] == "lpf") lpf = v;
        if (f[0] == "td_mmse") mmse = v;
    }
    o.require(wf >= 3.0 && wf <= 6.0, "wf " + fmt("%.3f", wf));
    o.require(std::abs(lpf / 150.0 - 1.0) <= 0.2, "lpf " + fmt("%.3f", lpf));
    o.require(std::abs(mmse - 256.0) < 1e-9, "td_mmse " + fmt("%.3f", mmse));
    o.note("wf " + fmt("%.3f", wf) + ", lpf " + fmt("%.1f", lpf) + ", td_mmse " + fmt("%.1f", mmse) + " ops/sample");
    return o;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 9. Determinism and CSV round trip.
Outcome criterion_9() {
    Outcome o;
    const auto cfg = RunConfig::parse(
        "ofdm.n_symbols = 2\nrun.n_trials = 8\nrun.seed = 90210\nrun.threads = 2\nsweep.values = 1, 100, 10000\n");
    const std::string a_path = "acceptance_9_a.csv", b_path = "acceptance_9_b.csv";
    const auto ra = run_configured_sweep(cfg, SweepKind::Beta);
    write_text_file(a_path, sweep_csv(ra));
    write_text_file(b_path, sweep_csv(run_configured_sweep(cfg, SweepKind::Beta)));
    const auto a = read_file(a_path), b = read_file(b_path);
    o.require(!a.empty() && a == b, "CSV bytes differ");
    std::remove(a_path.c_str());
    std::remove(b_path.c_str());

    const auto back = parse_sweep_csv(a);
    bool same = back.columns == ra.columns && back.rows.size() == ra.rows.size() && back.metadata == ra.metadata;
    for (std::size_t i = 0; same && i < ra.rows.size(); ++i) {
        same = format_number(back.rows[i].x) == format_number(ra.rows[i].x);
        for (std::size_t c = 0; same && c < ra.columns.size(); ++c)
            same = format_number(back.rows[i].stats[c].mean_db) == format_number(ra.rows[i].stats[c].mean_db) &&
                   format_number(back.rows[i].stats[c].ci95_db) == format_number(ra.rows[i].stats[c].ci95_db);
    }
    o.require(same, "parsed CSV differs from the in-memory result");
    o.require(sweep_csv(back) == a, "re-serialized CSV differs");
    o.note(std::to_string(a.size()) + " bytes");
    return o;
}

// 10. Estimator algebra on random cases.
Outcome criterion_10() {
    Outcome o;
    OfdmConfig ofdm;
    ofdm.n_fft = 64;
    ofdm.used_subcarriers = OfdmConfig::symmetric_used_subcarriers(64, 40);
    ofdm.cp_len = 8;
    ofdm.n_symbols = 3;
    const std::vector<EstimatorConfig> ests{{EstimatorKind::WfWindow, 35},
                                            {EstimatorKind::OnlyCpe},
                                            {EstimatorKind::LpfBased, 35, 50, LpfKind::MovingAverage},
                                            {EstimatorKind::LpfBased, 35, 21, LpfKind::WindowedSinc}};
    double worst_scale = 0, worst_rot = 0;
    bool cpe_equal = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RngStream rng(seed, "acceptance-10");
        const auto u = random_vec(ofdm.frame_len(), rng);
        auto y = random_vec(ofdm.frame_len(), rng);
        // Keep y correlated with u so the estimates are meaningful.
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = u[i] * std::polar(1.0, 0.3) + 0.3 * y[i];
        const double alpha = std::exp(4.0 * (rng.uniform() - 0.5));
        const double c = pi * (2.0 * rng.uniform() - 1.0);
        std::vector<cplx> us(u.size()), yr(y.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            us[i] = alpha * u[i];
            yr[i] = y[i] * std::polar(1.0, c);
        }
        for (const auto& e : ests) {
            const auto base = estimate_phase(y, u, e, ofdm);
            const auto sc = estimate_phase(y, us, e, ofdm);
            const auto ro = estimate_phase(yr, u, e, ofdm);
            for (std::size_t i = 0; i < base.size(); ++i) {
                worst_scale = std::max(worst_scale, wrap_dist(sc.phases[i], base.phases[i]));
                worst_rot = std::max(worst_rot, wrap_dist(ro.phases[i], base.phases[i] + c));
            }
        }
        cpe_equal = cpe_equal &&
                    only_cpe_estimate(y, u, ofdm).phases == wf_estimate(y, u, ofdm.symbol_len()).phases;
    }
    o.require(worst_scale <= 1e-12, "scale " + fmt("%.3g", worst_scale));
    o.require(worst_rot <= 1e-12, "rotation " + fmt("%.3g", worst_rot));
    o.require(cpe_equal, "only_cpe != wf(M = symbol length)");
    o.note("scale " + fmt("%.2e", worst_scale) + ", rotation " + fmt("%.2e", worst_rot));
    return o;
}

const std::function<Outcome()> kCriteria[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                              criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > 10) {
        std::fprintf(stderr, "criterion must be 1..10\n");
        return 2;
    }
    bool all_pass = true;
    for (int n = 1; n <= 10; ++n) {
        if (only != 0 && n != only) continue;
        Outcome o;
        try {
            o = kCriteria[n - 1]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %d: %s %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}

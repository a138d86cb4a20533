#include "fdpn/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fdpn {

void EstimatorConfig::validate() const {
    if (window_m < 1) throw ConfigError("estimator: window_m must be >= 1");
    if (lpf_len_l < 1) throw ConfigError("estimator: lpf_len_l must be >= 1");
}

std::string EstimatorConfig::label() const {
    switch (kind) {
        case EstimatorKind::WfWindow: return "wf";
        case EstimatorKind::OnlyCpe: return "only_cpe";
        case EstimatorKind::LpfBased: return "lpf";
    }
    return "?";
}

namespace {

void require_same_length(std::span<const cplx> y, std::span<const cplx> u, const char* who) {
    if (y.size() != u.size())
        throw InputError(std::string(who) + ": y has " + std::to_string(y.size()) +
                         " samples, u has " + std::to_string(u.size()));
}

bool all_zero(std::span<const cplx> u) {
    return std::all_of(u.begin(), u.end(), [](const cplx& v) { return v == cplx{}; });
}

}  // namespace

ComplexSignal reference_signal(const ComplexSignal& x_si, const ChannelEstimate& h_hat) {
    return apply_channel(x_si, h_hat.taps_hat);
}

cplx wf_window_weight(std::span<const cplx> y, std::span<const cplx> u) {
    require_same_length(y, u, "wf_window_weight");
    if (y.empty()) throw InputError("wf_window_weight: empty window");
    cplx cross{};
    double energy = 0.0;
    for (std::size_t m = 0; m < y.size(); ++m) {
        cross += y[m] * std::conj(u[m]);
        energy += std::norm(u[m]);
    }
    if (energy == 0.0) throw InputError("wf_window_weight: reference has zero energy in window");
    return cross / energy;
}

PhaseEstimate wf_estimate(std::span<const cplx> y, std::span<const cplx> u, std::size_t window_m) {
    require_same_length(y, u, "wf_estimate");
    if (window_m < 1) throw ConfigError("wf_estimate: window_m must be >= 1");
    PhaseEstimate est;
    est.phases.assign(y.size(), 0.0);
    for (std::size_t start = 0; start < y.size(); start += window_m) {
        const std::size_t len = std::min(window_m, y.size() - start);
        const auto uw = u.subspan(start, len);
        if (all_zero(uw)) {
            ++est.degenerate;
            continue;
        }
        // The weight's denominator is real and positive, so its argument is
        // that of the cross-correlation alone.
        const auto yw = y.subspan(start, len);
        cplx cross{};
        for (std::size_t m = 0; m < len; ++m) cross += yw[m] * std::conj(uw[m]);
        const double phi = std::arg(cross);
        std::fill_n(est.phases.begin() + static_cast<std::ptrdiff_t>(start), len, phi);
    }
    return est;
}

PhaseEstimate only_cpe_estimate(std::span<const cplx> y, std::span<const cplx> u,
                                const OfdmConfig& cfg) {
    require_same_length(y, u, "only_cpe_estimate");
    const std::size_t sym = cfg.symbol_len();
    if (y.size() % sym != 0)
        throw InputError("only_cpe_estimate: length " + std::to_string(y.size()) +
                         " is not a whole number of " + std::to_string(sym) + "-sample symbols");
    return wf_estimate(y, u, sym);
}

std::vector<double> lpf_taps(std::size_t l, LpfKind kind) {
    if (l < 1) throw ConfigError("lpf_taps: length must be >= 1");
    std::vector<double> taps(l, 1.0);
    if (kind == LpfKind::WindowedSinc && l > 1) {
        // Hamming-windowed sinc, cutoff 1/L cycles/sample, centered on the
        // filter midpoint (a half-sample offset for even L).
        const double fc = 1.0 / static_cast<double>(l);
        const double mid = static_cast<double>(l - 1) / 2.0;
        for (std::size_t i = 0; i < l; ++i) {
            const double t = static_cast<double>(i) - mid;
            const double x = 2.0 * fc * t;
            const double sinc = (x == 0.0) ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
            const double win = 0.54 + 0.46 * std::cos(2.0 * std::numbers::pi * t / static_cast<double>(l));
            taps[i] = sinc * win;
        }
    }
    double sum = 0.0;
    for (double t : taps) sum += t;
    for (double& t : taps) t /= sum;
    return taps;
}

PhaseEstimate lpf_estimate(std::span<const cplx> y, std::span<const cplx> u, std::size_t l,
                           LpfKind kind) {
    require_same_length(y, u, "lpf_estimate");
    const auto taps = lpf_taps(l, kind);
    const std::size_t n = y.size();
    const std::ptrdiff_t left = static_cast<std::ptrdiff_t>(l / 2);       // reach before n
    const std::ptrdiff_t right = static_cast<std::ptrdiff_t>(l - 1 - l / 2);  // reach after n

    std::vector<cplx> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = y[i] * std::conj(u[i]);

    PhaseEstimate est;
    est.phases.assign(n, 0.0);
    const auto last = static_cast<std::ptrdiff_t>(n) - 1;
    for (std::ptrdiff_t i = 0; i <= last; ++i) {
        std::ptrdiff_t lo = left;
        std::ptrdiff_t hi = right;
        if (i - lo < 0 || i + hi > last) {
            // Shortened symmetric window at the frame edges.
            const std::ptrdiff_t r = std::min(i, last - i);
            lo = std::min(lo, r);
            hi = std::min(hi, r);
        }
        cplx acc{};
        double wsum = 0.0;
        for (std::ptrdiff_t k = -lo; k <= hi; ++k) {
            const double w = taps[static_cast<std::size_t>(k + left)];
            acc += w * c[static_cast<std::size_t>(i + k)];
            wsum += w;
        }
        if (acc == cplx{}) {
            ++est.degenerate;
            continue;
        }
        est.phases[static_cast<std::size_t>(i)] = std::arg(acc / wsum);
    }
    return est;
}

PhaseEstimate estimate_phase(std::span<const cplx> y, std::span<const cplx> u,
                             const EstimatorConfig& cfg, const OfdmConfig& ofdm) {
    cfg.validate();
    switch (cfg.kind) {
        case EstimatorKind::WfWindow: return wf_estimate(y, u, cfg.window_m);
        case EstimatorKind::OnlyCpe: return only_cpe_estimate(y, u, ofdm);
        case EstimatorKind::LpfBased: return lpf_estimate(y, u, cfg.lpf_len_l, cfg.lpf_kind);
    }
    throw ConfigError("estimate_phase: unknown estimator kind");
}

std::vector<cplx> mitigate_and_cancel(std::span<const cplx> y, std::span<const cplx> u,
                                      const PhaseEstimate& phi) {
    require_same_length(y, u, "mitigate_and_cancel");
    if (phi.size() != y.size()) throw InputError("mitigate_and_cancel: phase estimate length mismatch");
    std::vector<cplx> e(y.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = y[i] - u[i] * cplx{std::cos(phi.phases[i]), std::sin(phi.phases[i])};
    return e;
}

namespace {

constexpr double kCmulMults = 4;  // complex x complex
constexpr double kRmulMults = 2;  // real x complex
constexpr double kCaddAdds = 2;

// Cost of one window of m samples under the WfWindow datapath.
void add_wf_window(OpCount& c, std::size_t m) {
    c.real_mults += kCmulMults * static_cast<double>(m);
    c.real_adds += kCaddAdds * static_cast<double>(m - 1);
    c.arg_evals += 1;
}

}  // namespace

OpCount op_count(OpCountKind kind, const OpCountParams& params, std::size_t n_samples) {
    if (n_samples < 1) throw InputError("op_count: n_samples must be >= 1");
    OpCount c;
    c.n_samples = n_samples;
    switch (kind) {
        case OpCountKind::WfWindow:
        case OpCountKind::OnlyCpe: {
            const std::size_t m = (kind == OpCountKind::WfWindow) ? params.window_m : params.symbol_len;
            if (m < 1) throw InputError("op_count: window must be >= 1");
            const std::size_t full = n_samples / m;
            for (std::size_t w = 0; w < full; ++w) add_wf_window(c, m);
            if (const std::size_t rest = n_samples % m; rest > 0) add_wf_window(c, rest);
            break;
        }
        case OpCountKind::LpfBased: {
            const std::size_t l = params.lpf_len_l;
            if (l < 1) throw InputError("op_count: lpf length must be >= 1");
            const double pairs = static_cast<double>(l / 2);
            const double center = static_cast<double>(l % 2);
            const double ns = static_cast<double>(n_samples);
            // y u*, then folded FIR: pre-add per pair, one multiply per pair
            // (and center tap), accumulation of the products.
            c.real_mults = ns * (kCmulMults + kRmulMults * (pairs + center));
            c.real_adds = ns * kCaddAdds * (pairs + (pairs + center - 1));
            c.arg_evals = ns;
            break;
        }
        case OpCountKind::TdMmse: {
            const double k = static_cast<double>(params.samples_per_symbol);
            const double n_est = k / 2.0;
            // N^2 per symbol of K samples, scaled to n_samples.
            c.real_mults = n_est * n_est * static_cast<double>(n_samples) / k;
            break;
        }
    }
    return c;
}

std::string op_count_formula(OpCountKind kind) {
    switch (kind) {
        case OpCountKind::WfWindow: return "6M-1 per window of M";
        case OpCountKind::OnlyCpe: return "6K-1 per symbol of K";
        case OpCountKind::LpfBased: return "3L+3 per sample (L even)";
        case OpCountKind::TdMmse: return "N^2 per symbol, N=K/2";
    }
    return "?";
}

std::string op_count_name(OpCountKind kind) {
    switch (kind) {
        case OpCountKind::WfWindow: return "wf";
        case OpCountKind::OnlyCpe: return "only_cpe";
        case OpCountKind::LpfBased: return "lpf";
        case OpCountKind::TdMmse: return "td_mmse";
    }
    return "?";
}

}  // namespace fdpn

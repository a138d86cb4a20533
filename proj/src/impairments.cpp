#include "fdpn/impairments.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fdpn {

double PhaseNoiseParams::increment_variance() const {
    return 2.0 * std::numbers::pi * beta_hz * ts_s;
}

void PhaseNoiseParams::validate() const {
    if (!(beta_hz >= 0.0) || !std::isfinite(beta_hz))
        throw ConfigError("phase noise: beta_hz must be finite and >= 0");
    if (!(ts_s > 0.0) || !std::isfinite(ts_s))
        throw ConfigError("phase noise: ts_s must be positive");
}

PhasePath PhasePath::negated() const {
    PhasePath out{phases};
    for (auto& p : out.phases) p = -p;
    return out;
}

PhasePath PhasePath::constant(std::size_t n, double value) {
    return PhasePath{std::vector<double>(n, value)};
}

double ChannelModel::power() const {
    double p = 0.0;
    for (const auto& t : taps) p += std::norm(t);
    return p;
}

PhasePath gen_wiener_pn(const PhaseNoiseParams& p, std::size_t n, RngStream& rng) {
    p.validate();
    if (n == 0) throw InputError("gen_wiener_pn: n must be >= 1");
    const double sigma = std::sqrt(p.increment_variance());
    PhasePath path;
    path.phases.resize(n);
    path.phases[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) path.phases[i] = path.phases[i - 1] + sigma * rng.gaussian();
    return path;
}

ComplexSignal apply_pn(const ComplexSignal& x, const PhasePath& path) {
    if (x.size() != path.size())
        throw InputError("apply_pn: signal has " + std::to_string(x.size()) + " samples, path " +
                         std::to_string(path.size()));
    std::vector<cplx> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = x[i] * cplx{std::cos(path.phases[i]), std::sin(path.phases[i])};
    return ComplexSignal(std::move(out), x.sample_rate());
}

PhasePath combined_pn(const PhasePath& tx, const PhasePath& rx) {
    if (tx.size() != rx.size()) throw InputError("combined_pn: path lengths differ");
    PhasePath out{tx.phases};
    for (std::size_t i = 0; i < out.phases.size(); ++i) out.phases[i] += rx.phases[i];
    return out;
}

std::vector<double> exponential_pdp(std::size_t n_taps, double decay_db) {
    if (n_taps == 0) throw ConfigError("exponential_pdp: n_taps must be >= 1");
    std::vector<double> pdp(n_taps);
    double sum = 0.0;
    for (std::size_t i = 0; i < n_taps; ++i) {
        pdp[i] = std::pow(10.0, -decay_db * static_cast<double>(i) / 10.0);
        sum += pdp[i];
    }
    for (auto& p : pdp) p /= sum;
    return pdp;
}

ChannelModel gen_rician_channel(double k_db, std::size_t n_taps, std::span<const double> pdp,
                                RngStream& rng) {
    if (n_taps == 0) throw InputError("gen_rician_channel: n_taps must be >= 1");
    if (pdp.size() != n_taps) throw InputError("gen_rician_channel: profile length != n_taps");
    double sum = 0.0;
    for (double p : pdp) {
        if (!(p >= 0.0)) throw InputError("gen_rician_channel: negative profile power");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("gen_rician_channel: profile must sum to 1");

    const double k = std::pow(10.0, k_db / 10.0);
    const double los = std::sqrt(k / (k + 1.0));
    const double diffuse = std::sqrt(1.0 / (k + 1.0));

    ChannelModel h;
    h.rician_k_db = k_db;
    h.taps.resize(n_taps);
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const cplx los_term = los * cplx{std::cos(theta), std::sin(theta)};
    h.taps[0] = std::sqrt(pdp[0]) * (los_term + diffuse * rng.complex_gaussian());
    for (std::size_t i = 1; i < n_taps; ++i) h.taps[i] = std::sqrt(pdp[i]) * rng.complex_gaussian();
    return h;
}

ComplexSignal apply_channel(const ComplexSignal& x, std::span<const cplx> taps) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc{};
        const std::size_t kmax = std::min(taps.size(), i + 1);
        for (std::size_t k = 0; k < kmax; ++k) acc += taps[k] * x[i - k];
        out[i] = acc;
    }
    return ComplexSignal(std::move(out), x.sample_rate());
}

ChannelEstimate perturb_channel_estimate(const ChannelModel& h, double err_rel_db, RngStream& rng) {
    ChannelEstimate est{h.taps, err_rel_db};
    if (err_rel_db <= -300.0) return est;
    const double rel = std::pow(10.0, err_rel_db / 10.0);
    for (auto& t : est.taps_hat) t += rng.complex_gaussian(std::norm(t) * rel);
    return est;
}

ComplexSignal add_awgn(const ComplexSignal& x, double snr_db, double ref_power, RngStream& rng) {
    if (!(ref_power > 0.0)) throw InputError("add_awgn: ref_power must be positive");
    const double p = ref_power * std::pow(10.0, -snr_db / 10.0);
    std::vector<cplx> out(x.vec());
    for (auto& v : out) v += rng.complex_gaussian(p);
    return ComplexSignal(std::move(out), x.sample_rate());
}

ComplexSignal attenuate(const ComplexSignal& x, double db) {
    const double g = std::pow(10.0, -db / 20.0);
    std::vector<cplx> out(x.vec());
    for (auto& v : out) v *= g;
    return ComplexSignal(std::move(out), x.sample_rate());
}

}  // namespace fdpn

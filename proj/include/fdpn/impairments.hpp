#pragma once

// Phase noise, channels, channel-estimate error, AWGN and stage attenuations.

#include <span>
#include <vector>

#include "fdpn/rng.hpp"
#include "fdpn/signal.hpp"

namespace fdpn {

struct PhaseNoiseParams {
    double beta_hz = 0.0;  // 3-dB Lorentzian bandwidth
    double ts_s = 1.0 / 15.36e6;

    /// Per-sample Wiener increment variance 2*pi*beta*Ts (rad^2).
    double increment_variance() const;
    void validate() const;
};

/// Unwrapped per-sample phase trajectory in radians.
struct PhasePath {
    std::vector<double> phases;

    std::size_t size() const { return phases.size(); }
    PhasePath negated() const;
    static PhasePath constant(std::size_t n, double value);
};

enum class OscillatorMode { Common, Independent };

struct ChannelModel {
    std::vector<cplx> taps;
    double rician_k_db = 0.0;

    std::size_t n_taps() const { return taps.size(); }
    double power() const;
};

struct ChannelEstimate {
    std::vector<cplx> taps_hat;
    double err_rel_db = 0.0;
};

/// phi_0 = 0, phi_{n+1} = phi_n + N(0, 2*pi*beta*Ts).
PhasePath gen_wiener_pn(const PhaseNoiseParams& p, std::size_t n, RngStream& rng);

/// out_n = x_n * exp(j*phi_n).
ComplexSignal apply_pn(const ComplexSignal& x, const PhasePath& path);

/// Element-wise phase sum. For a common oscillator pass the same path twice.
PhasePath combined_pn(const PhasePath& tx, const PhasePath& rx);

/// Exponential power-delay profile normalized to unit sum, decaying by
/// decay_db per tap.
std::vector<double> exponential_pdp(std::size_t n_taps, double decay_db);

/// Tap 0 carries the LOS component sqrt(K/(K+1)) e^{j theta} plus a diffuse
/// part, each scaled by its profile power; later taps are Rayleigh. Mean total
/// power is 1 when pdp sums to 1.
ChannelModel gen_rician_channel(double k_db, std::size_t n_taps, std::span<const double> pdp,
                                RngStream& rng);

/// Linear convolution truncated to the input length.
ComplexSignal apply_channel(const ComplexSignal& x, std::span<const cplx> taps);
inline ComplexSignal apply_channel(const ComplexSignal& x, const ChannelModel& h) {
    return apply_channel(x, h.taps);
}

/// h_hat = h + eps, eps_i ~ CN(0, |h_i|^2 * 10^(err_rel_db/10)).
ChannelEstimate perturb_channel_estimate(const ChannelModel& h, double err_rel_db, RngStream& rng);

/// x + z with E|z|^2 = ref_power * 10^(-snr_db/10).
ComplexSignal add_awgn(const ComplexSignal& x, double snr_db, double ref_power, RngStream& rng);

/// x * 10^(-db/20).
ComplexSignal attenuate(const ComplexSignal& x, double db);

}  // namespace fdpn

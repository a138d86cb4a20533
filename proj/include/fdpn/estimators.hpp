#pragma once

// Time-domain phase-noise estimators for digital self-interference
// cancellation, the cancellation step, and arithmetic cost accounting.
//
// All estimators see the received digital-SIC input y and the regenerated SI
// reference u = x_si * h_hat, and return one phase per sample.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fdpn/impairments.hpp"
#include "fdpn/signal.hpp"

namespace fdpn {

enum class EstimatorKind { WfWindow, OnlyCpe, LpfBased };
enum class LpfKind { MovingAverage, WindowedSinc };

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::WfWindow;
    std::size_t window_m = 35;
    std::size_t lpf_len_l = 50;
    LpfKind lpf_kind = LpfKind::MovingAverage;

    void validate() const;
    /// Short column label: "wf", "only_cpe" or "lpf".
    std::string label() const;
};

struct PhaseEstimate {
    std::vector<double> phases;
    /// Windows (or, for the LPF, output samples) with no reference energy.
    /// Their phase is set to 0.
    std::size_t degenerate = 0;

    std::size_t size() const { return phases.size(); }
};

/// u = x_si * h_hat, truncated to the input length.
ComplexSignal reference_signal(const ComplexSignal& x_si, const ChannelEstimate& h_hat);

/// Least-squares weight over one window: sum(y u*) / sum(|u|^2).
/// Throws InputError on unequal or empty windows or zero reference energy.
cplx wf_window_weight(std::span<const cplx> y, std::span<const cplx> u);

/// Splits the samples into consecutive windows of window_m (the last one may
/// be shorter) and assigns every sample of a window the argument of that
/// window's weight. Zero-energy windows get phase 0 and are counted in
/// PhaseEstimate::degenerate.
PhaseEstimate wf_estimate(std::span<const cplx> y, std::span<const cplx> u, std::size_t window_m);

/// One phase per OFDM symbol (CP included); the same computation as
/// wf_estimate with window_m = n_fft + cp_len. Lengths must be a whole number
/// of symbols.
PhaseEstimate only_cpe_estimate(std::span<const cplx> y, std::span<const cplx> u,
                                const OfdmConfig& cfg);

/// Centered length-L low-pass FIR over c_n = y_n u_n*, then arg. Near the
/// frame edges the window is shortened symmetrically and renormalized.
PhaseEstimate lpf_estimate(std::span<const cplx> y, std::span<const cplx> u, std::size_t l,
                           LpfKind kind);

/// Unit-DC-gain taps for a length-L filter of the given kind, ordered from the
/// most negative offset -floor(L/2) to L-1-floor(L/2).
std::vector<double> lpf_taps(std::size_t l, LpfKind kind);

/// Dispatches on cfg.kind.
PhaseEstimate estimate_phase(std::span<const cplx> y, std::span<const cplx> u,
                             const EstimatorConfig& cfg, const OfdmConfig& ofdm);

/// Digital-SIC output e_n = y_n - u_n exp(j phi_hat_n).
std::vector<cplx> mitigate_and_cancel(std::span<const cplx> y, std::span<const cplx> u,
                                      const PhaseEstimate& phi);

// ---------------------------------------------------------------------------
// Arithmetic cost accounting.
//
// Counting rules (real-op equivalents):
//   complex x complex multiply   4 real_mults
//   real x complex multiply      2 real_mults
//   complex add / accumulate     2 real_adds
//   phase extraction (arg)       1 arg_evals
//   division                     1 divisions
// Conjugation is free. Only the phase-estimation datapath is counted; the
// final e^{j phi} rotation is common to all time-domain estimators.
//
//   WfWindow   per window of m: m products y u*, m-1 accumulations, 1 arg.
//              The normalizing energy in the weight is real and positive and
//              does not change its argument, so it is not on the phase path.
//   OnlyCpe    WfWindow with m = samples per OFDM symbol.
//   LpfBased   per sample: 1 product y u*, then an L-tap linear-phase FIR in
//              folded form (one pre-add and one real-by-complex multiply per
//              tap pair, plus accumulation), 1 arg.
//   TdMmse     analytic only: N^2 operations per symbol with N = K/2
//              estimated samples, K samples per symbol.
// ---------------------------------------------------------------------------

enum class OpCountKind { WfWindow, OnlyCpe, LpfBased, TdMmse };

struct OpCountParams {
    std::size_t window_m = 35;
    std::size_t lpf_len_l = 50;
    std::size_t samples_per_symbol = 1024;  // K, FFT size
    std::size_t symbol_len = 1096;          // OnlyCpe window, CP included
};

struct OpCount {
    double real_mults = 0;
    double real_adds = 0;
    double divisions = 0;
    double arg_evals = 0;
    std::size_t n_samples = 0;

    double total() const { return real_mults + real_adds + divisions + arg_evals; }
    double per_sample() const { return total() / static_cast<double>(n_samples); }
};

OpCount op_count(OpCountKind kind, const OpCountParams& params, std::size_t n_samples);

/// Closed-form complexity label for the table, e.g. "6M-1 per window".
std::string op_count_formula(OpCountKind kind);
std::string op_count_name(OpCountKind kind);

}  // namespace fdpn

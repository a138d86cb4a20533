#pragma once

// Frequency-domain view of phase noise: spectrum J_k of exp(j*phi_n), the
// combined TX/RX spectrum, and the common-phase-error / ICI split of a
// phase-rotated signal. Used for validation and analysis; the estimators work
// in the time domain.
//
// Convention: X_k = sum_n x_n e^{-j2pi nk/N}. Under it, multiplying by
// exp(j*phi) in time is (1/N) times circular convolution with J in frequency,
// and every identity below carries that 1/N explicitly.

#include <span>

#include "fdpn/impairments.hpp"
#include "fdpn/signal.hpp"

namespace fdpn {

struct PnSpectrum {
    SpectrumVector j;

    std::size_t size() const { return j.size(); }
    /// J_0 / N: the common rotation of every subcarrier in the block.
    cplx normalized_cpe() const;
};

PnSpectrum pn_dft(std::span<const double> phases, std::size_t n);
inline PnSpectrum pn_dft(const PhasePath& path, std::size_t n) { return pn_dft(path.phases, n); }

/// (1/N) sum_m a_m b_{(k-m) mod N}.
SpectrumVector circular_convolve_normalized(const SpectrumVector& a, const SpectrumVector& b);

/// J^c = (1/N) J^t (*) J^r, the spectrum of exp(j(phi_t + phi_r)).
PnSpectrum combine_spectra(const PnSpectrum& jt, const PnSpectrum& jr);

struct CpeIciSplit {
    SpectrumVector cpe_term;  // X_k H_k J_0 / N
    SpectrumVector ici_term;  // (1/N) sum_{l != k} X_l H_l J_{k-l}
};

/// Splits the received SI spectrum under per-subcarrier channel H_k into its
/// CPE and ICI parts. cpe + ici reproduces dft(idft(X*H) * exp(j*phi_c)).
CpeIciSplit cpe_ici_split(const SpectrumVector& x_spec, const SpectrumVector& h_spec,
                          const PnSpectrum& jc);

}  // namespace fdpn

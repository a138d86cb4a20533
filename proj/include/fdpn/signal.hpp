#pragma once

// Complex baseband containers, DFT, QAM mapping and OFDM framing.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fdpn/error.hpp"

namespace fdpn {

using cplx = std::complex<double>;

/// Finite sequence of complex baseband samples at a fixed sampling rate.
/// Construction rejects non-finite samples and non-positive rates.
class ComplexSignal {
public:
    ComplexSignal() = default;
    ComplexSignal(std::vector<cplx> samples, double sample_rate);

    std::span<const cplx> samples() const { return samples_; }
    const std::vector<cplx>& vec() const { return samples_; }
    double sample_rate() const { return sample_rate_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    const cplx& operator[](std::size_t i) const { return samples_[i]; }

    /// Mean of |x_n|^2; zero for an empty signal.
    double power() const;
    double energy() const;

private:
    std::vector<cplx> samples_;
    double sample_rate_ = 1.0;
};

/// Frequency-domain vector indexed by subcarrier k = 0..N-1.
struct SpectrumVector {
    std::vector<cplx> bins;

    std::size_t size() const { return bins.size(); }
    const cplx& operator[](std::size_t k) const { return bins[k]; }
};

/// Unnormalized forward DFT: X_k = sum_n x_n exp(-j 2 pi n k / N).
/// Throws ConfigError if block.size() != n.
SpectrumVector dft(std::span<const cplx> block, std::size_t n);

/// Inverse of dft() including the 1/N factor.
std::vector<cplx> idft(const SpectrumVector& spectrum, std::size_t n);

/// Gray-coded square QAM with unit average symbol energy. Bit 0 maps to the
/// positive half-axis; the first half of each symbol's bits drives I, the
/// second half Q. Orders 4, 16 and 64 are supported.
std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, unsigned order);

/// Bits per QAM symbol; throws ConfigError for unsupported orders.
unsigned qam_bits_per_symbol(unsigned order);

struct OfdmConfig {
    std::size_t n_fft = 1024;
    std::vector<std::size_t> used_subcarriers = symmetric_used_subcarriers(1024, 300);
    std::size_t cp_len = 72;
    unsigned qam_order = 16;
    double sample_rate = 15.36e6;
    std::size_t n_symbols = 64;

    std::size_t symbol_len() const { return n_fft + cp_len; }
    std::size_t frame_len() const { return n_symbols * symbol_len(); }
    std::size_t data_symbols() const { return used_subcarriers.size() * n_symbols; }

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// `count` indices symmetric about DC with DC excluded: {1..count/2} and
    /// {n_fft - count/2 .. n_fft - 1}. Odd counts put the extra index on the
    /// positive side.
    static std::vector<std::size_t> symmetric_used_subcarriers(std::size_t n_fft,
                                                               std::size_t count);
};

/// Places data on the used subcarriers, IDFTs each symbol and prepends the
/// cyclic prefix. Output length is n_symbols * (n_fft + cp_len).
ComplexSignal ofdm_modulate(std::span<const cplx> symbols, const OfdmConfig& cfg);

/// Strips CP, DFTs and extracts used subcarriers. Exact inverse of
/// ofdm_modulate when no impairment is present.
std::vector<cplx> ofdm_demodulate(const ComplexSignal& x, const OfdmConfig& cfg);

}  // namespace fdpn

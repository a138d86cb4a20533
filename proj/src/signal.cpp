#include "fdpn/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace fdpn {

ComplexSignal::ComplexSignal(std::vector<cplx> samples, double sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
    if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_))
        throw InputError("ComplexSignal: sample rate must be positive and finite");
    for (const auto& s : samples_)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw InputError("ComplexSignal: non-finite sample");
}

double ComplexSignal::energy() const {
    double e = 0.0;
    for (const auto& s : samples_) e += std::norm(s);
    return e;
}

double ComplexSignal::power() const {
    return samples_.empty() ? 0.0 : energy() / static_cast<double>(samples_.size());
}

namespace {

// Twiddles e^{-j 2 pi k / n}, evaluated directly per k.
const std::vector<cplx>& twiddles(std::size_t n) {
    thread_local std::size_t cached_n = 0;
    thread_local std::vector<cplx> table;
    if (cached_n != n) {
        table.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            table[k] = {std::cos(a), std::sin(a)};
        }
        cached_n = n;
    }
    return table;
}

// Iterative radix-2 decimation-in-time; sign = -1 forward, +1 inverse (unscaled).
void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx tw = w[k * stride];
                if (inverse) tw = std::conj(tw);
                const cplx t = a[i + k + half] * tw;
                a[i + k + half] = a[i + k] - t;
                a[i + k] += t;
            }
        }
    }
}

void dft_direct(std::span<const cplx> in, std::vector<cplx>& out, bool inverse) {
    const std::size_t n = in.size();
    const auto& w = twiddles(n);
    out.assign(n, cplx{});
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t m = 0; m < n; ++m) {
            cplx tw = w[(m * k) % n];
            if (inverse) tw = std::conj(tw);
            acc += in[m] * tw;
        }
        out[k] = acc;
    }
}

std::vector<cplx> transform(std::span<const cplx> in, bool inverse) {
    std::vector<cplx> out;
    if (in.empty()) return out;
    if (std::has_single_bit(in.size())) {
        out.assign(in.begin(), in.end());
        fft_pow2(out, inverse);
    } else {
        dft_direct(in, out, inverse);
    }
    return out;
}

}  // namespace

SpectrumVector dft(std::span<const cplx> block, std::size_t n) {
    if (block.size() != n || n == 0)
        throw ConfigError("dft: block length " + std::to_string(block.size()) +
                          " does not match N = " + std::to_string(n));
    return SpectrumVector{transform(block, false)};
}

std::vector<cplx> idft(const SpectrumVector& spectrum, std::size_t n) {
    if (spectrum.size() != n || n == 0)
        throw ConfigError("idft: spectrum length " + std::to_string(spectrum.size()) +
                          " does not match N = " + std::to_string(n));
    auto out = transform(spectrum.bins, true);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

unsigned qam_bits_per_symbol(unsigned order) {
    switch (order) {
        case 4: return 2;
        case 16: return 4;
        case 64: return 6;
        default: throw ConfigError("unsupported QAM order " + std::to_string(order));
    }
}

std::vector<cplx> qam_map(std::span<const std::uint8_t> bits, unsigned order) {
    const unsigned bps = qam_bits_per_symbol(order);
    if (bits.size() % bps != 0)
        throw InputError("qam_map: bit count " + std::to_string(bits.size()) +
                         " not divisible by " + std::to_string(bps));
    const unsigned per_axis = bps / 2;
    const int side = 1 << per_axis;  // levels per axis
    // Average energy of the unnormalized grid {+-1, +-3, ...}^2 is 2(M-1)/3.
    const double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);

    auto axis_level = [&](std::size_t offset) {
        unsigned gray = 0;
        for (unsigned b = 0; b < per_axis; ++b) gray = (gray << 1) | (bits[offset + b] & 1u);
        unsigned idx = gray;
        for (unsigned shift = 1; shift < per_axis; shift <<= 1) idx ^= idx >> shift;
        return static_cast<double>((side - 1) - 2 * static_cast<int>(idx));
    };

    std::vector<cplx> out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps)
        out.emplace_back(axis_level(i) * scale, axis_level(i + per_axis) * scale);
    return out;
}

std::vector<std::size_t> OfdmConfig::symmetric_used_subcarriers(std::size_t n_fft,
                                                                std::size_t count) {
    const std::size_t neg = count / 2;
    const std::size_t pos = count - neg;
    std::vector<std::size_t> idx;
    idx.reserve(count);
    for (std::size_t k = 1; k <= pos; ++k) idx.push_back(k);
    for (std::size_t k = n_fft - neg; k < n_fft; ++k) idx.push_back(k);
    return idx;
}

void OfdmConfig::validate() const {
    if (n_fft == 0) throw ConfigError("ofdm: n_fft must be positive");
    if (cp_len >= n_fft) throw ConfigError("ofdm: cp_len must be smaller than n_fft");
    if (used_subcarriers.size() > n_fft) throw ConfigError("ofdm: more used subcarriers than n_fft");
    std::vector<bool> seen(n_fft, false);
    for (auto k : used_subcarriers) {
        if (k >= n_fft) throw ConfigError("ofdm: used subcarrier index out of range");
        if (seen[k]) throw ConfigError("ofdm: duplicate used subcarrier index");
        seen[k] = true;
    }
    qam_bits_per_symbol(qam_order);
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
        throw ConfigError("ofdm: sample_rate must be positive");
    if (n_symbols == 0) throw ConfigError("ofdm: n_symbols must be positive");
}

ComplexSignal ofdm_modulate(std::span<const cplx> symbols, const OfdmConfig& cfg) {
    cfg.validate();
    if (symbols.size() != cfg.data_symbols())
        throw InputError("ofdm_modulate: expected " + std::to_string(cfg.data_symbols()) +
                         " symbols, got " + std::to_string(symbols.size()));
    const std::size_t nu = cfg.used_subcarriers.size();
    std::vector<cplx> out;
    out.reserve(cfg.frame_len());
    SpectrumVector grid{std::vector<cplx>(cfg.n_fft)};
    for (std::size_t s = 0; s < cfg.n_symbols; ++s) {
        std::fill(grid.bins.begin(), grid.bins.end(), cplx{});
        for (std::size_t i = 0; i < nu; ++i) grid.bins[cfg.used_subcarriers[i]] = symbols[s * nu + i];
        const auto body = idft(grid, cfg.n_fft);
        out.insert(out.end(), body.end() - static_cast<std::ptrdiff_t>(cfg.cp_len), body.end());
        out.insert(out.end(), body.begin(), body.end());
    }
    return ComplexSignal(std::move(out), cfg.sample_rate);
}

std::vector<cplx> ofdm_demodulate(const ComplexSignal& x, const OfdmConfig& cfg) {
    cfg.validate();
    if (x.size() != cfg.frame_len())
        throw InputError("ofdm_demodulate: expected " + std::to_string(cfg.frame_len()) +
                         " samples, got " + std::to_string(x.size()));
    const std::size_t nu = cfg.used_subcarriers.size();
    std::vector<cplx> out;
    out.reserve(cfg.data_symbols());
    const auto all = x.samples();
    for (std::size_t s = 0; s < cfg.n_symbols; ++s) {
        const auto body = all.subspan(s * cfg.symbol_len() + cfg.cp_len, cfg.n_fft);
        const auto spec = dft(body, cfg.n_fft);
        for (std::size_t i = 0; i < nu; ++i) out.push_back(spec[cfg.used_subcarriers[i]]);
    }
    return out;
}

}  // namespace fdpn

#include "fdpn/pn_spectral.hpp"

#include <cmath>
#include <string>

namespace fdpn {

cplx PnSpectrum::normalized_cpe() const {
    if (j.bins.empty()) throw InputError("PnSpectrum: empty spectrum");
    return j.bins[0] / static_cast<double>(j.bins.size());
}

PnSpectrum pn_dft(std::span<const double> phases, std::size_t n) {
    if (phases.size() != n)
        throw InputError("pn_dft: path length " + std::to_string(phases.size()) +
                         " does not match N = " + std::to_string(n));
    std::vector<cplx> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = {std::cos(phases[i]), std::sin(phases[i])};
    return PnSpectrum{dft(e, n)};
}

SpectrumVector circular_convolve_normalized(const SpectrumVector& a, const SpectrumVector& b) {
    if (a.size() != b.size()) throw InputError("circular convolution: length mismatch");
    const std::size_t n = a.size();
    SpectrumVector out{std::vector<cplx>(n)};
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t m = 0; m < n; ++m) acc += a[m] * b[(k + n - m) % n];
        out.bins[k] = acc * inv_n;
    }
    return out;
}

PnSpectrum combine_spectra(const PnSpectrum& jt, const PnSpectrum& jr) {
    if (jt.size() != jr.size()) throw InputError("combine_spectra: length mismatch");
    return PnSpectrum{circular_convolve_normalized(jt.j, jr.j)};
}

CpeIciSplit cpe_ici_split(const SpectrumVector& x_spec, const SpectrumVector& h_spec,
                          const PnSpectrum& jc) {
    const std::size_t n = x_spec.size();
    if (h_spec.size() != n || jc.size() != n) throw InputError("cpe_ici_split: length mismatch");
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<cplx> xh(n);
    for (std::size_t k = 0; k < n; ++k) xh[k] = x_spec[k] * h_spec[k];

    CpeIciSplit out{SpectrumVector{std::vector<cplx>(n)}, SpectrumVector{std::vector<cplx>(n)}};
    for (std::size_t k = 0; k < n; ++k) {
        out.cpe_term.bins[k] = xh[k] * jc.j[0] * inv_n;
        cplx acc{};
        for (std::size_t l = 0; l < n; ++l) {
            if (l == k) continue;
            acc += xh[l] * jc.j[(k + n - l) % n];
        }
        out.ici_term.bins[k] = acc * inv_n;
    }
    return out;
}

}  // namespace fdpn

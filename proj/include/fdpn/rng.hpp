#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace fdpn {

/// Seeded random stream. Every random quantity in the simulator comes from a
/// stream forked off a labelled parent, so a (seed, label path) pair fully
/// determines the draws.
///
/// The integer sequence comes from std::mt19937_64, whose output is fixed by
/// the standard. Gaussian draws use a local Box-Muller transform rather than
/// std::normal_distribution, whose algorithm is implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string label);

    std::uint64_t seed() const { return seed_; }
    const std::string& label() const { return label_; }

    /// Deterministic child stream. Same label gives the same child; distinct
    /// labels give unrelated seeds.
    RngStream fork(std::string_view label) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform();
    double gaussian();
    /// Circularly-symmetric complex Gaussian with E|z|^2 = power.
    std::complex<double> complex_gaussian(double power = 1.0);

private:
    std::uint64_t seed_;
    std::string label_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline RngStream rng_fork(const RngStream& parent, std::string_view label) {
    return parent.fork(label);
}

}  // namespace fdpn

#include "fdpn/rng.hpp"

#include <cmath>
#include <numbers>

namespace fdpn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string label)
    : seed_(seed), label_(std::move(label)), engine_(splitmix64(seed ^ fnv1a(label_))) {}

RngStream RngStream::fork(std::string_view label) const {
    const std::uint64_t child = splitmix64(splitmix64(seed_) ^ fnv1a(label_) ^ splitmix64(fnv1a(label)));
    return RngStream(child, label_ + "/" + std::string(label));
}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> RngStream::complex_gaussian(double power) {
    const double s = std::sqrt(power / 2.0);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
}

}  // namespace fdpn

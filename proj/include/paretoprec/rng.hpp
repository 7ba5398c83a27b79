#pragma once

// Counter-based pseudo-random generator. Every draw is a pure function of
// (seed, stream, counter) through the SplitMix64 finalizer, so experiments
// are reproducible bit-for-bit regardless of call interleaving or threading.

#include <cmath>
#include <complex>
#include <cstdint>

namespace paretoprec {

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + k * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : state_(seed) {}
    // independent substream, e.g. one per sample index
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(splitmix64_at(seed, 0x7375627374726d00ULL ^ stream)) {}

    std::uint64_t next_u64() { return splitmix64_at(state_, ++counter_); }

    // uniform on the open interval (0, 1)
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller, second value cached
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    // real and imaginary parts each standard normal
    std::complex<double> next_cnormal() {
        const double re = next_normal();
        const double im = next_normal();
        return {re, im};
    }

private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace paretoprec

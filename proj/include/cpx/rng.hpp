#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cpx {

/// Seeded random source used by every stochastic routine in the toolkit.
/// Uniform doubles are derived from the raw 64-bit stream and normals from
/// Box-Muller, so a given seed produces the same values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed_used() const { return seed_; }

    double uniform() {  // in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> cnormal() {
        return {normal() * M_SQRT1_2, normal() * M_SQRT1_2};
    }

    std::uint64_t bits() { return eng_(); }

    /// Child generator with a decorrelated seed; used when a routine needs
    /// to hand out independent deterministic streams.
    Rng fork() { return Rng(eng_() ^ 0x9e3779b97f4a7c15ULL); }

private:
    std::uint64_t seed_ = 0;
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cpx

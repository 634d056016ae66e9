#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

#include "ellw2/errors.hpp"

namespace ellw2 {

/// Counter-based 64-bit generator (splitmix64 output function over a Weyl
/// sequence). Bitwise reproducible for a given seed on any platform; the
/// sampling layers below use only this engine, never std:: distributions,
/// so sample streams are part of the library contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double next_unit_open_left() { return 1.0 - next_unit(); }

    /// Standard normal via the Box-Muller transform. Draws come in pairs;
    /// the second member is cached for the next call.
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = next_unit_open_left();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(angle);
        has_cached_ = true;
        return r * std::cos(angle);
    }

    /// Gamma(shape, scale) for shape >= 1, Marsaglia-Tsang squeeze method.
    double next_gamma(double shape, double scale) {
        if (!(shape >= 1.0)) throw NumericError("gamma sampler requires shape >= 1");
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            const double x = next_normal();
            const double base = 1.0 + c * x;
            if (base <= 0.0) continue;
            const double v = base * base * base;
            const double u = next_unit_open_left();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    /// Chi-square with df > 2 degrees of freedom (df/2 >= 1 keeps the gamma
    /// sampler in its shape >= 1 regime).
    double next_chi_square(double df) { return next_gamma(df / 2.0, 2.0); }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Deterministic seed family: member k of the stream rooted at `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
    Rng r(base ^ (0xd1b54a32d192ed03ULL + k * 0x9e3779b97f4a7c15ULL));
    return r.next_u64();
}

}  // namespace ellw2

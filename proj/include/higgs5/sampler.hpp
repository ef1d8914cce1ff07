#pragma once

#include "higgs5/bundle.hpp"

#include <cstdint>
#include <random>

namespace higgs5 {

/// Deterministic rational sampler. Draws go through our own modulo
/// reduction, not std::uniform_int_distribution, so a fixed seed gives the
/// same stream on every toolchain.
class Sampler {
public:
    explicit Sampler(uint64_t seed) : eng_(seed) {}

    uint64_t uint_below(uint64_t n) { return eng_() % n; }

    /// Rational with numerator in [-bound, bound] and denominator in [1, bound].
    Rational rational(unsigned bound) {
        int64_t num = static_cast<int64_t>(uint_below(2 * bound + 1)) - static_cast<int64_t>(bound);
        int64_t den = static_cast<int64_t>(uint_below(bound)) + 1;
        return Rational(num, den);
    }

    Rational nonzero_rational(unsigned bound) {
        for (;;) {
            Rational r = rational(bound);
            if (r != 0) return r;
        }
    }

    /// A marked sphere with small distinct lambda, t.
    MarkedSphere sphere(unsigned bound = 8) {
        for (;;) {
            Rational lam = rational(bound), t = rational(bound);
            if (lam == 0 || lam == 1 || t == 0 || t == 1 || lam == t) continue;
            return MarkedSphere(lam, t);
        }
    }

    ProjDirection direction(unsigned bound = 8) {
        for (;;) {
            Rational x = rational(bound), y = rational(bound);
            if (x == 0 && y == 0) continue;
            return ProjDirection(x, y);
        }
    }

    /// Random d = 0 bundle with pairwise distinct directions (mu_c-stable
    /// with probability 1; the caller may still verify).
    ParabolicBundle generic_bundle(const MarkedSphere& sph, unsigned bound = 8);

    /// Random mu_c-stable chart bundle (u, v) with all 16 line conditions off.
    ParabolicBundle generic_chart_bundle(const MarkedSphere& sph, unsigned bound = 12);

private:
    std::mt19937_64 eng_;
};

} // namespace higgs5

#pragma once

#include "satokp/laurent.hpp"
#include "satokp/psido.hpp"
#include "satokp/series.hpp"

#include <cstdint>

namespace satokp {

// splitmix64; self-contained so seeded runs are reproducible byte-for-byte.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    long uniform(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational rational(long max_num = 4, long max_den = 3) {
        long n = uniform(-max_num, max_num);
        long d = uniform(1, max_den);
        return Rational(n, d);
    }

    Rational nonzero_rational(long max_num = 4, long max_den = 3) {
        Rational q = rational(max_num, max_den);
        while (q.is_zero()) q = rational(max_num, max_den);
        return q;
    }

    XPoly xpoly(long max_deg);
    XPoly nonzero_xpoly(long max_deg);
    ZSeries laurent(long min_exp, long max_exp);

    // Operator with exponents in [min_exp, max_exp], exact poly coefficients.
    PdoSeries op(long min_exp, long max_exp, long coeff_deg);
    // 1 + E_- with support down to -depth.
    PdoSeries one_plus_volterra(long depth, long coeff_deg);
    // Nonzero element of E_- (at least one stored term).
    PdoSeries volterra(long depth, long coeff_deg);
    PdoSeries differential(long order, long coeff_deg);

  private:
    std::uint64_t state_;
};

} // namespace satokp

#include "doctest.h"

#include "satokp/laurent.hpp"
#include "satokp/randomgen.hpp"

using namespace satokp;

namespace {

// Brute-force convolution on exponent windows, independent of operator*.
ZSeries convolve(const ZSeries &a, const ZSeries &b) {
    ZSeries r;
    for (long i = a.min_exp(); i <= a.max_exp(); ++i)
        for (long j = b.min_exp(); j <= b.max_exp(); ++j)
            r = r + ZSeries::monomial(i + j, a.coeff(i) * b.coeff(j));
    return r;
}

} // namespace

TEST_CASE("laurent arithmetic basics") {
    ZSeries zi = ZSeries::monomial(-1), z2 = ZSeries::monomial(2);
    CHECK(zi * z2 == ZSeries::monomial(1));
    ZSeries v = ZSeries::monomial(-3) + ZSeries::monomial(1);
    CHECK(v.valuation() == -3);
    ZSeries p = (ZSeries::monomial(-1) + ZSeries::one()) * (ZSeries::monomial(-1) - ZSeries::one());
    CHECK(p == ZSeries::monomial(-2) - ZSeries::one());
}

TEST_CASE("products agree with the convolution oracle") {
    Rng rng(21);
    for (int t = 0; t < 15; ++t) {
        ZSeries a = rng.laurent(-4, 4), b = rng.laurent(-4, 4);
        CHECK(a * b == convolve(a, b));
    }
}

TEST_CASE("zero normalizes to a canonical representation") {
    ZSeries a = ZSeries::monomial(-5, Rational(2)) - ZSeries::monomial(-5, Rational(2));
    CHECK(a.is_zero());
    CHECK(a == ZSeries::zero());
    CHECK_FALSE(a.valuation().has_value());
}

TEST_CASE("honest precision for truncated products") {
    // z^-3 * (known mod z^8) is only known mod z^5.
    ZSeries a = ZSeries::monomial(-3);
    ZSeries b = (ZSeries::one() + ZSeries::monomial(7)).truncated(8);
    ZSeries p = a * b;
    CHECK(p.prec() == 5);
    CHECK(p.coeff(-3) == Rational(1));
    CHECK(p.coeff(4) == Rational(1));
    // Truncation monotonicity: recompute wider, re-truncate, same value.
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        ZSeries u = rng.laurent(-3, 9), v = rng.laurent(-3, 9);
        ZSeries wide = u.truncated(10) * v.truncated(10);
        ZSeries narrow = u.truncated(6) * v.truncated(6);
        CHECK(wide.truncated(narrow.prec_or_inf()) == narrow);
    }
}

TEST_CASE("unit inversion in k((z))") {
    ZSeries u = ZSeries::monomial(-2) + ZSeries::monomial(-1, Rational(3));
    ZSeries ui = u.inverse(6);
    ZSeries prod = u * ui;
    CHECK(prod.coeff(0) == Rational(1));
    for (long e = 1; e < 6; ++e) CHECK(prod.coeff(e).is_zero());
    CHECK_THROWS_AS(ZSeries::zero().inverse(4), math_error);
}

TEST_CASE("ring axioms on random laurent values") {
    Rng rng(33);
    for (int t = 0; t < 15; ++t) {
        ZSeries a = rng.laurent(-3, 3), b = rng.laurent(-3, 3), c = rng.laurent(-3, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

#include "doctest.h"

#include "satokp/randomgen.hpp"
#include "satokp/sato.hpp"

#include <map>

using namespace satokp;

namespace {

// Slow independent reduction mod Ex: only the one-step rewrites
// x d = d x - 1 and x d^{-1} = d^{-1} x + d^{-2} are used, so this never
// touches the closed-form falling-factorial normal ordering.
ZSeries slow_reduce_x_dpow(long i) {
    // class of x * d^i
    if (i == 0) return ZSeries::zero(); // x itself lies in Ex
    if (i > 0) {
        // x d^i = d (x d^{i-1}) - d^{i-1}
        ZSeries inner = slow_reduce_x_dpow(i - 1);
        return inner.shifted(-1) - ZSeries::monomial(1 - i);
    }
    // x d^i = d^{-1} (x d^{i+1}) + d^{i-1}
    ZSeries inner = slow_reduce_x_dpow(i + 1);
    return inner.shifted(1) + ZSeries::monomial(1 - i);
}

ZSeries slow_reduce(long xpow, long i) {
    static std::map<std::pair<long, long>, ZSeries> memo;
    if (xpow == 0) return ZSeries::monomial(-i);
    auto key = std::make_pair(xpow, i);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ZSeries first = slow_reduce_x_dpow(i); // class of x d^i as constant ops
    ZSeries out;
    for (long e = first.min_exp(); e <= first.max_exp(); ++e) {
        Rational c = first.coeff(e);
        if (c.is_zero()) continue;
        out = out + slow_reduce(xpow - 1, -e).scaled(c);
    }
    memo.emplace(key, out);
    return out;
}

ZSeries slow_image(const PdoSeries &op) {
    ZSeries out;
    for (const auto &[i, c] : op.terms())
        for (long p = 0; p <= c.degree(); ++p)
            out = out + slow_reduce(p, i).scaled(c.coeff(p));
    return out;
}

bool in_w0(const ZSeries &v) { return v.is_zero() || v.max_exp() <= 0; }

} // namespace

TEST_CASE("sato image of pure powers and of Ex") {
    for (long n = -3; n <= 3; ++n) CHECK(sato_image(PdoSeries::dd(n)) == ZSeries::monomial(-n));
    Rng rng(61);
    for (int t = 0; t < 10; ++t) {
        PdoSeries p = rng.op(-4, 3, 3);
        CHECK(sato_image(mul_x_right(p, 1)).is_zero());
        // right multiplication by x agrees with the Leibniz product
        CHECK(mul_x_right(p, 1) == p * PdoSeries::monomial(0, XPoly::monomial(1)));
    }
}

TEST_CASE("x^n d^n reduces to (-1)^n n!") {
    for (long n = 0; n <= 6; ++n) {
        PdoSeries op = PdoSeries::monomial(n, XPoly::monomial(n));
        Rational expect = factorial(n);
        if (n % 2 == 1) expect = -expect;
        CHECK(sato_image(op) == ZSeries(expect));
        CHECK(slow_image(op) == ZSeries(expect));
    }
}

TEST_CASE("closed-form image agrees with the slow rewriting oracle") {
    Rng rng(63);
    for (int t = 0; t < 20; ++t) {
        PdoSeries p = rng.op(-5, 4, 4);
        CHECK(sato_image(p) == slow_image(p));
    }
}

TEST_CASE("image is k-linear") {
    Rng rng(65);
    for (int t = 0; t < 10; ++t) {
        PdoSeries p = rng.op(-4, 2, 3), q = rng.op(-4, 2, 3);
        Rational a = rng.rational(), b = rng.rational();
        PdoSeries combo = PdoSeries::monomial(0, XPoly(a)) * p + PdoSeries::monomial(0, XPoly(b)) * q;
        CHECK(sato_image(combo) == sato_image(p).scaled(a) + sato_image(q).scaled(b));
    }
}

TEST_CASE("lift is a section of the image") {
    CHECK(sato_lift(ZSeries::monomial(2)) == PdoSeries::dd(-2));
    CHECK(sato_lift(ZSeries::zero()).is_zero());
    Rng rng(67);
    for (int t = 0; t < 15; ++t) {
        ZSeries v = rng.laurent(-5, 5);
        CHECK(sato_image(sato_lift(v)) == v);
    }
}

TEST_CASE("action on V") {
    Rng rng(69);
    ZSeries v = rng.laurent(-4, 4);
    CHECK(sato_act(PdoSeries::one(), v) == v);
    for (long n = -3; n <= 3; ++n)
        CHECK(sato_act(PdoSeries::dd(1), ZSeries::monomial(n)) == ZSeries::monomial(n - 1));
    for (int t = 0; t < 10; ++t) {
        PdoSeries p = rng.op(-3, 2, 2);
        ZSeries a = rng.laurent(-3, 3), b = rng.laurent(-3, 3);
        Rational ca = rng.rational(), cb = rng.rational();
        CHECK(sato_act(p, a.scaled(ca) + b.scaled(cb)) ==
              sato_act(p, a).scaled(ca) + sato_act(p, b).scaled(cb));
    }
}

TEST_CASE("stabilizer of W0: differential operators keep it") {
    Rng rng(71);
    for (int t = 0; t < 20; ++t) {
        PdoSeries p = rng.differential(4, 4);
        ZSeries w = rng.laurent(-5, 0); // polynomial in z^{-1}
        CHECK(in_w0(sato_act(p, w)));
    }
}

TEST_CASE("stabilizer of W0: a Volterra tail always escapes") {
    Rng rng(73);
    for (int t = 0; t < 20; ++t) {
        PdoSeries p = rng.differential(3, 3) + rng.volterra(4, 3);
        REQUIRE_FALSE(p.split_minus().is_zero());
        bool witness = false;
        for (long n = 0; n <= 12 && !witness; ++n)
            witness = !in_w0(sato_act(p, ZSeries::monomial(-n)));
        CHECK(witness);
    }
}

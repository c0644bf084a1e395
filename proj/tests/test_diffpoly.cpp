#include "doctest.h"

#include "satokp/diffpoly.hpp"
#include "satokp/randomgen.hpp"

using namespace satokp;

namespace {

DiffPoly u(long m, long k = 0) { return DiffPoly::var(m, k); }

DiffPoly random_diffpoly(Rng &rng) {
    DiffPoly p;
    long nterms = rng.uniform(1, 4);
    for (long t = 0; t < nterms; ++t) {
        DiffPoly mono = DiffPoly::from_rational(rng.nonzero_rational());
        long nfac = rng.uniform(1, 2);
        for (long f = 0; f < nfac; ++f) mono = mono * u(rng.uniform(1, 3), rng.uniform(0, 2));
        p = p + mono;
    }
    return p;
}

} // namespace

TEST_CASE("total derivative basics") {
    CHECK(u(1).derivative() == u(1, 1));
    CHECK((u(1) * u(1)).derivative() == (u(1) * u(1, 1)).scaled(Rational(2)));
    // Leibniz on u1 * u2'
    CHECK((u(1) * u(2, 1)).derivative() == u(1, 1) * u(2, 1) + u(1) * u(2, 2));
    CHECK(DiffPoly::from_rational(Rational(7)).derivative().is_zero());
}

TEST_CASE("total derivative is a derivation on random pairs") {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        DiffPoly p = random_diffpoly(rng), q = random_diffpoly(rng);
        CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
    }
}

TEST_CASE("substitution") {
    // 2u2 + u1' vanishes under u2 -> -u1'/2
    std::map<long, DiffPoly> bind{{2, u(1, 1).scaled(Rational(-1, 2))}};
    DiffPoly c = u(2).scaled(Rational(2)) + u(1, 1);
    CHECK(c.substitute(bind).is_zero());
    // derivatives of bound generators substitute the derived binding
    CHECK(u(2, 1).substitute(bind) == u(1, 2).scaled(Rational(-1, 2)));
    // identity bindings leave the value unchanged
    Rng rng(3);
    DiffPoly p = random_diffpoly(rng);
    CHECK(p.substitute({}) == p);
    CHECK(p.substitute({{7, u(7)}}) == p);
}

TEST_CASE("nested bindings resolve; cycles are rejected") {
    std::map<long, DiffPoly> nested{{2, u(3) * u(3)}, {3, u(1, 1)}};
    CHECK(u(2).substitute(nested) == u(1, 1) * u(1, 1));
    std::map<long, DiffPoly> cyc{{2, u(3)}, {3, u(2)}};
    CHECK_THROWS_AS(u(2).substitute(cyc), math_error);
    std::map<long, DiffPoly> self{{2, u(2) + DiffPoly::one()}};
    CHECK_THROWS_AS(u(2).substitute(self), math_error);
}

TEST_CASE("substitution commutes with the total derivative for closed bindings") {
    std::map<long, DiffPoly> bind{{2, u(1, 1).scaled(Rational(-1, 2))},
                                  {3, u(1).pow(2).scaled(Rational(-1, 2)) + u(1, 2).scaled(Rational(1, 4))}};
    Rng rng(29);
    for (int t = 0; t < 20; ++t) {
        DiffPoly p = random_diffpoly(rng);
        CHECK(p.derivative().substitute(bind) == p.substitute(bind).derivative());
    }
}

TEST_CASE("canonical form is order-independent") {
    DiffPoly a = (u(1) + u(2, 1)) * (u(1) - u(2, 1));
    DiffPoly b = u(1) * u(1) - u(2, 1) * u(2, 1);
    CHECK(a == b);
    CHECK(a.str() == b.str());
}

TEST_CASE("printer emits the expected style") {
    DiffPoly kp3 = u(1, 3) + u(2, 2).scaled(Rational(3)) + u(3, 1).scaled(Rational(3)) +
                   (u(1) * u(1, 1)).scaled(Rational(6));
    CHECK(kp3.str() == "u1''' + 3*u2'' + 3*u3' + 6*u1*u1'");
    CHECK((u(1, 5) - u(2)).str() == "u1^(5) - u2");
}

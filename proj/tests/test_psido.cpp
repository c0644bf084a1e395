#include "doctest.h"

#include "satokp/psido.hpp"
#include "satokp/randomgen.hpp"

using namespace satokp;

namespace {

PdoSeries dpow(long i) { return PdoSeries::dd(i); }
PdoSeries f_of_x(const XPoly &f) { return PdoSeries::monomial(0, f); }

} // namespace

TEST_CASE("Heisenberg relation [d, f] = f'") {
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        XPoly f = rng.nonzero_xpoly(5);
        CHECK(comm(dpow(1), f_of_x(f)) == f_of_x(f.derivative()));
    }
}

TEST_CASE("d^{-1} f - f d^{-1} expands with alternating signs") {
    Rng rng(43);
    for (int t = 0; t < 20; ++t) {
        XPoly f = rng.nonzero_xpoly(4);
        PdoSeries lhs = comm(dpow(-1), f_of_x(f)).truncated_depth(-6);
        PdoSeries rhs;
        XPoly dk = f;
        for (long k = 1;; ++k) {
            dk = dk.derivative();
            if (dk.is_zero()) break;
            XPoly c = (k % 2 == 1) ? -dk : dk;
            rhs = rhs + PdoSeries::monomial(-1 - k, c);
        }
        CHECK(lhs == rhs.truncated_depth(-6));
    }
}

TEST_CASE("identity and split projections") {
    Rng rng(45);
    PdoSeries p = rng.op(-4, 3, 3);
    CHECK(PdoSeries::one() * p == p);
    CHECK(p * PdoSeries::one() == p);
    CHECK(p.split_plus() + p.split_minus() == p);
    CHECK(p.split_plus().split_plus() == p.split_plus());
    CHECK(p.split_minus().split_plus().is_zero());
    CHECK(dpow(2).split_plus() == dpow(2));
    CHECK(dpow(2).split_minus().is_zero());
}

TEST_CASE("E+ and E- are closed under multiplication") {
    Rng rng(47);
    for (int t = 0; t < 10; ++t) {
        PdoSeries a = rng.differential(3, 3), b = rng.differential(3, 3);
        CHECK((a * b).is_differential());
        PdoSeries u = rng.volterra(4, 3), v = rng.volterra(4, 3);
        CHECK((u * v).is_volterra());
    }
}

TEST_CASE("associativity of the Leibniz product, exact") {
    Rng rng(49);
    for (int t = 0; t < 30; ++t) {
        PdoSeries a = rng.op(-4, 2, 3), b = rng.op(-4, 2, 3), c = rng.op(-4, 2, 3);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("powers") {
    CHECK(dpow(1).pow(5) == dpow(5));
    Rng rng(51);
    PdoSeries l = dpow(1) + rng.volterra(3, 2);
    CHECK(l.pow(2) * l == l * l.pow(2));
}

TEST_CASE("unitriangular inversion") {
    CHECK(PdoSeries::one().truncated_depth(-5).inv_unitriangular() == PdoSeries::one().truncated_depth(-5));
    Rng rng(53);
    for (int t = 0; t < 10; ++t) {
        PdoSeries s = rng.one_plus_volterra(3, 2).truncated_depth(-6);
        PdoSeries si = s.inv_unitriangular();
        CHECK(agrees(s * si, PdoSeries::one()));
        CHECK(agrees(si * s, PdoSeries::one()));
        CHECK(agrees(si.inv_unitriangular(), s));
    }
    CHECK_THROWS_AS(dpow(1).inv_unitriangular(), math_error);
    PdoSeries bad = PdoSeries::one() + dpow(1);
    CHECK_THROWS_AS(bad.inv_unitriangular(), math_error);
    PdoSeries exact_v = PdoSeries::one() + PdoSeries::monomial(-1, XPoly::one());
    CHECK_THROWS_AS(exact_v.inv_unitriangular(), config_error);
}

TEST_CASE("depth windows compose under multiplication") {
    // Recompute at higher depth, re-truncate, compare: the retained window
    // of a truncated product never depends on discarded terms.
    Rng rng(55);
    for (int t = 0; t < 10; ++t) {
        PdoSeries a = rng.op(-8, 2, 3), b = rng.op(-8, 2, 3);
        PdoSeries deep = a.truncated_depth(-8) * b.truncated_depth(-8);
        PdoSeries shallow = a.truncated_depth(-5) * b.truncated_depth(-5);
        REQUIRE(shallow.depth().has_value());
        CHECK(deep.truncated_depth(*shallow.depth()) == shallow);
    }
}

TEST_CASE("weight windows compose under multiplication") {
    Rng rng(57);
    for (int t = 0; t < 10; ++t) {
        PdoSeries a = rng.one_plus_volterra(4, 4), b = rng.one_plus_volterra(4, 4);
        PdoSeries wide = a.truncated_weight(9) * b.truncated_weight(9);
        PdoSeries narrow = a.truncated_weight(5) * b.truncated_weight(5);
        REQUIRE(narrow.weight_trust().has_value());
        CHECK(wide.truncated_weight(*narrow.weight_trust()) == narrow);
        // inversion stays exact on the weight window
        PdoSeries si = a.truncated_weight(6).inv_unitriangular();
        CHECK(agrees(a.truncated_weight(6) * si, PdoSeries::one()));
    }
}

TEST_CASE("diffpoly coefficients: Volterra products need a depth window") {
    PdoDiff u1 = PdoDiff::monomial(-1, DiffPoly::var(1));
    CHECK_THROWS_AS(u1 * u1, config_error);
    PdoDiff ok = u1.truncated_depth(-6) * u1.truncated_depth(-6);
    CHECK(ok.depth().has_value());
    CHECK(ok.coefficient(-2) == DiffPoly::var(1) * DiffPoly::var(1));
}

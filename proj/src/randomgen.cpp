#include "satokp/randomgen.hpp"

namespace satokp {

XPoly Rng::xpoly(long max_deg) {
    XPoly r;
    for (long i = 0; i <= max_deg; ++i) {
        if (uniform(0, 2) == 0) continue; // keep supports sparse
        r = r + XPoly::monomial(i, rational());
    }
    return r;
}

XPoly Rng::nonzero_xpoly(long max_deg) {
    XPoly r = xpoly(max_deg);
    if (r.is_zero()) r = XPoly::monomial(uniform(0, max_deg), nonzero_rational());
    return r;
}

ZSeries Rng::laurent(long min_exp, long max_exp) {
    ZSeries r;
    for (long e = min_exp; e <= max_exp; ++e) {
        if (uniform(0, 2) == 0) continue;
        r = r + ZSeries::monomial(e, rational());
    }
    return r;
}

PdoSeries Rng::op(long min_exp, long max_exp, long coeff_deg) {
    PdoSeries r;
    for (long i = min_exp; i <= max_exp; ++i) {
        if (uniform(0, 1) == 0) continue;
        XPoly c = xpoly(coeff_deg);
        if (!c.is_zero()) r = r + PdoSeries::monomial(i, c);
    }
    return r;
}

PdoSeries Rng::one_plus_volterra(long depth, long coeff_deg) {
    return PdoSeries::one() + volterra(depth, coeff_deg);
}

PdoSeries Rng::volterra(long depth, long coeff_deg) {
    PdoSeries r = op(-depth, -1, coeff_deg);
    if (r.is_zero())
        r = PdoSeries::monomial(uniform(-depth, -1), XPoly::monomial(uniform(0, coeff_deg), nonzero_rational()));
    return r;
}

PdoSeries Rng::differential(long order, long coeff_deg) {
    PdoSeries r = op(0, order, coeff_deg);
    if (r.is_zero()) r = PdoSeries::monomial(uniform(0, order), XPoly(nonzero_rational()));
    return r;
}

} // namespace satokp

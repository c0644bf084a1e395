#pragma once

#include "satokp/laurent.hpp"
#include "satokp/psido.hpp"

namespace satokp {

// The quotient map E -> E/Ex = V with d^{-1} identified with z. Closed form:
// x^p d^i = (-1)^p i(i-1)...(i-p+1) d^{i-p} mod Ex, so a term x^p d^i lands
// on z^{p-i}; the z-exponent is exactly the weight grading of the operator.
template <ScalarRing S, char XV>
Laurent<S, 'z'> sato_image(const PsiDO<Series<S, XV>> &op) {
    Laurent<S, 'z'> out;
    for (const auto &[i, c] : op.terms()) {
        if (!c.exact()) throw config_error("sato image needs coefficients exact in x");
        for (long p = 0; p <= c.degree(); ++p) {
            S cp = c.coeff(p);
            if (cp.is_zero()) continue;
            Rational f = falling_factorial(i, p);
            if (p % 2 != 0) f = -f;
            if (f.is_zero()) continue;
            out = out + Laurent<S, 'z'>::monomial(p - i, cp * S::from_rational(f));
        }
    }
    long prec = PREC_INF;
    if (op.weight_trust()) prec = prec_min(prec, *op.weight_trust() + 1);
    if (op.depth()) prec = prec_min(prec, 1 - *op.depth());
    if (prec < PREC_INF) out = out.truncated(prec);
    return out;
}

// Constant-coefficient section of the Sato map: z^e -> d^{-e}.
template <ScalarRing S>
PsiDO<Series<S, 'x'>> sato_lift(const Laurent<S, 'z'> &v) {
    PsiDO<Series<S, 'x'>> out;
    for (long e = v.min_exp(); e <= v.max_exp(); ++e) {
        S c = v.coeff(e);
        if (c.is_zero()) continue;
        out = out + PsiDO<Series<S, 'x'>>::monomial(-e, Series<S, 'x'>(c));
    }
    if (v.prec()) {
        out = out.truncated_depth(1 - *v.prec());
        out = out.truncated_weight(*v.prec() - 1);
    }
    return out;
}

// Left action of E on V through the Sato map.
template <ScalarRing S, char XV>
Laurent<S, 'z'> sato_act(const PsiDO<Series<S, XV>> &op, const Laurent<S, 'z'> &v) {
    return sato_image(op * sato_lift(v));
}

// Right multiplication by x^n, normal-ordered: d^i x = x d^i + i d^{i-1}.
template <ScalarRing S, char XV>
PsiDO<Series<S, XV>> mul_x_right(const PsiDO<Series<S, XV>> &op, long n) {
    using Op = PsiDO<Series<S, XV>>;
    Op out;
    for (const auto &[i, c] : op.terms()) {
        // d^i x^n = sum_k C(i,k) ff(n,k) x^{n-k} d^{i-k}, k <= n.
        for (long k = 0; k <= n; ++k) {
            Rational f = gen_binomial(i, k) * falling_factorial(n, k);
            if (f.is_zero()) continue;
            Series<S, XV> shifted = c * Series<S, XV>::monomial(n - k);
            out = out + Op::monomial(i - k, shifted.scaled(S::from_rational(f)));
        }
    }
    // x^n raises every weight by n; unknown terms only sink in d-exponent.
    if (op.depth()) out = out.truncated_depth(*op.depth());
    if (op.weight_trust()) out = out.truncated_weight(*op.weight_trust() + n);
    return out;
}

using PdoDual = PsiDO<Series<DualScalar, 'x'>>;
using ZDual = Laurent<DualScalar, 'z'>;

} // namespace satokp

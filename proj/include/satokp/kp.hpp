#pragma once

#include "satokp/diffpoly.hpp"
#include "satokp/psido.hpp"

#include <map>
#include <string>
#include <vector>

namespace satokp {

// d + u_1 d^-1 + ... + u_M d^-M, trusted down to d^-M. The leading d has
// coefficient exactly 1 and there is no d^0 term.
PdoDiff lax_operator(long depth);

// KP_n = [(L^n)_+, L]; lies in E_- on its trusted window.
template <CoeffRing C>
PsiDO<C> kp_field_op(const PsiDO<C> &L, long n) {
    if (n < 1) throw math_error("kp field needs n >= 1");
    PsiDO<C> ln = L.pow(n);
    return comm(ln.split_plus(), L);
}

// Symbolic KP_n at Lax depth M; the result is trusted for d^-m, m <= M - n.
PdoDiff kp_field(long lax_depth, long n);

struct EvolutionEquation {
    long time_index = 2;
    DiffVar target;
    DiffPoly rhs;
    std::string str() const;
};

// dt_n u_m = coefficient of d^-m in KP_n, m = 1..count.
std::vector<EvolutionEquation> evolution_equations(long lax_depth, long n, long count);

// The derivation dt_n on diffpolys induced by the hierarchy at a fixed n:
// u_m^{(k)} maps to the k-th x-derivative of the equation for u_m.
class FlowDerivation {
  public:
    FlowDerivation(long lax_depth, long n);
    const DiffPoly &rhs(long gen) const;
    DiffPoly apply(const DiffPoly &p) const;
    long max_gen() const { return static_cast<long>(rhs_.size()); }

  private:
    long n_;
    long lax_depth_;
    std::map<long, DiffPoly> rhs_;
};

struct DerivationStep {
    std::string label;
    std::string text;
};

struct KpDerivation {
    long lax_depth = 4;
    std::vector<DerivationStep> steps;
    DiffPoly eq4_residual;   // 2u_t - 2u''' - 6uu' - 3(u2'' + dt2 u2)
    DiffPoly residual;       // (4u_t - u''' - 12uu')' - 3u_yy, fully expanded
    bool ok = false;
};

// Mechanized elimination: u3' from the n=2/n=3 equations, one x-derivative,
// then the u2''' and (dt2 u2)' substitutions from the n=2 flow. A nonzero
// residual is a derivation failure and is reported as such.
KpDerivation derive_kp(long lax_depth = 4);

struct ConstraintSolution {
    long lax_depth = 4;
    std::map<long, DiffPoly> bindings; // u_m for m >= 2 in terms of u_1
    bool verified = false;             // (L^2)_- vanishes after substitution
};

// Solve (L^2)_- = 0 recursively: the d^-m coefficient is linear in u_{m+1}
// with coefficient 2.
ConstraintSolution kdv_constraint(long lax_depth);

struct KdvDerivation {
    long lax_depth = 4;
    ConstraintSolution constraint;
    DiffPoly rhs;                    // dt3 u1 in terms of u1 alone
    bool dt2_vanishes = false;       // the n=2 flow of u1 dies under the constraint
    bool consistent_with_kp = false; // (4 rhs - u''' - 12uu')' == 0
    std::string discrepancy_note;
    std::vector<DerivationStep> steps;
    bool ok = false;
};

// Constraint route: substitute the (L^2)_- = 0 bindings into the first n=3
// equation. The engine result 4 dt3 u1 = u1''' + 12 u1 u1' is primary; the
// classical display with coefficient 7 on u''' is flagged, not adopted.
KdvDerivation derive_kdv(long lax_depth = 4);

// dt3 of every coefficient of (L^2)_- vanishes under the constraint, for
// coefficients the depth budget can expand (m <= lax_depth - 4).
bool kdv_flow_preserves_constraint(long lax_depth);

// Taylor jet in t_n of the Lax flow dL/dt_n = KP_n(L), by Picard iteration
// in the jet ring S[t]/(t^{order+1}).
template <ScalarRing S, char TV, char XV>
PsiDO<Series<Series<S, TV>, XV>> flow_jet(const PsiDO<Series<S, XV>> &L0, long n, long jet_order) {
    using TS = Series<S, TV>;
    using C2 = Series<TS, XV>;
    if (jet_order < 1) throw math_error("jet order must be >= 1");
    auto lift_coeff = [&](const Series<S, XV> &c) {
        C2 out;
        for (long p = 0; p <= c.degree(); ++p)
            out = out + C2::monomial(p, TS(c.coeff(p)).truncated(jet_order + 1));
        return out;
    };
    PsiDO<C2> base = L0.template mapped<C2>(lift_coeff);
    PsiDO<C2> jet = base;
    for (long round = 0; round < jet_order; ++round) {
        PsiDO<C2> field = kp_field_op(jet, n);
        PsiDO<C2> integrated = field.template mapped<C2>([&](const C2 &c) {
            C2 out;
            for (long p = 0; p <= c.degree(); ++p)
                out = out + C2::monomial(p, c.coeff(p).antiderivative().truncated(jet_order + 1));
            return out;
        });
        jet = base + integrated;
    }
    return jet;
}

} // namespace satokp

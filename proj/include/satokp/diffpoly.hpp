#pragma once

#include "satokp/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace satokp {

// u_m^{(k)}: the k-th x-derivative of the m-th generator.
struct DiffVar {
    long gen = 1;
    long ord = 0;
    friend auto operator<=>(const DiffVar &, const DiffVar &) = default;
};

// Multiset of DiffVars as sorted (var, exponent) pairs.
class DiffMonomial {
  public:
    DiffMonomial() = default;
    explicit DiffMonomial(DiffVar v) : factors_{{v, 1}} {}

    static DiffMonomial unit() { return DiffMonomial(); }

    bool is_unit() const { return factors_.empty(); }
    long total_degree() const;
    const std::vector<std::pair<DiffVar, long>> &factors() const { return factors_; }

    DiffMonomial times(const DiffVar &v, long e = 1) const;
    friend DiffMonomial operator*(const DiffMonomial &a, const DiffMonomial &b);

    friend bool operator==(const DiffMonomial &a, const DiffMonomial &b) { return a.factors_ == b.factors_; }

    // Graded lexicographic: total degree first, then the sorted factor lists.
    friend bool graded_lex_less(const DiffMonomial &a, const DiffMonomial &b);

    std::string str() const;

  private:
    std::vector<std::pair<DiffVar, long>> factors_;
};

struct DiffMonomialCmp {
    bool operator()(const DiffMonomial &a, const DiffMonomial &b) const { return graded_lex_less(a, b); }
};

// Polynomials in the u_m^{(k)} over the rationals, with the total derivative
// extending u_m^{(k)} -> u_m^{(k+1)}.
class DiffPoly {
  public:
    DiffPoly() = default;

    static DiffPoly zero() { return DiffPoly(); }
    static DiffPoly one() { return from_rational(Rational::one()); }
    static DiffPoly from_rational(const Rational &q);
    static DiffPoly var(long gen, long ord = 0);
    static DiffPoly term(DiffMonomial m, Rational c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::map<DiffMonomial, Rational, DiffMonomialCmp> &terms() const { return terms_; }

    Rational coefficient(const DiffMonomial &m) const;
    Rational constant_part() const { return coefficient(DiffMonomial::unit()); }

    DiffPoly operator-() const;
    friend DiffPoly operator+(const DiffPoly &a, const DiffPoly &b);
    friend DiffPoly operator-(const DiffPoly &a, const DiffPoly &b);
    friend DiffPoly operator*(const DiffPoly &a, const DiffPoly &b);
    friend bool operator==(const DiffPoly &a, const DiffPoly &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffPoly &a, const DiffPoly &b) { return !(a == b); }

    DiffPoly scaled(const Rational &c) const;
    DiffPoly pow(long n) const;

    // Total derivative by x (Leibniz over monomials).
    DiffPoly derivative() const;
    DiffPoly derivative(long k) const;

    // Simultaneous substitution of bound generators (keys are generator
    // indices, bindings attach to the underived variable). Derived
    // occurrences receive the total derivative of the binding. Nested
    // bindings are resolved topologically; a cycle is an error.
    DiffPoly substitute(const std::map<long, DiffPoly> &bindings) const;

    bool contains_generator(long gen) const;
    long max_generator() const;

    std::string str() const;

    static DiffPoly scalar_times(const Rational &q, const DiffPoly &p) { return p.scaled(q); }

  private:
    void add_term(const DiffMonomial &m, const Rational &c);

    std::map<DiffMonomial, Rational, DiffMonomialCmp> terms_;
};

std::string scalar_str(const DiffPoly &p);

} // namespace satokp

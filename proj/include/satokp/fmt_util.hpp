#pragma once

#include "satokp/dual.hpp"
#include "satokp/rational.hpp"

#include <string>

namespace satokp {

inline bool needs_parens(const std::string &s) {
    // Top-level sums or explicit products read wrong when juxtaposed with *.
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-' || s[i] == ' ') return true;
    return false;
}

inline std::string parenthesized(const std::string &s) {
    return needs_parens(s) ? "(" + s + ")" : s;
}

inline std::string scalar_str(const Rational &q) { return q.str(); }

template <ScalarRing S>
std::string scalar_str(const Dual<S> &d) {
    if (d.is_zero()) return "0";
    std::string v = scalar_str(d.value());
    std::string e = scalar_str(d.eps_part());
    if (d.eps_part().is_zero()) return v;
    std::string rhs = "eps*" + parenthesized(e);
    if (d.value().is_zero()) return rhs;
    return v + " + " + rhs;
}

// var^exp with the coefficient in front; empty coefficient string means 1.
inline std::string power_str(char var, long exp) {
    std::string s(1, var);
    if (exp == 1) return s;
    return s + "^" + std::to_string(exp);
}

} // namespace satokp

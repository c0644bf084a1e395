#pragma once

#include "satokp/fmt_util.hpp"
#include "satokp/scalar.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace satokp {

constexpr long PREC_INF = std::numeric_limits<long>::max() / 4;

inline long prec_min(long a, long b) { return a < b ? a : b; }

// Power series in one variable over S. Exponents >= prec() are unknown;
// no prec means the value is an exact polynomial. Stored trailing zeros
// are stripped, so coeff(i) == 0 for unstored i < prec is a known zero.
template <ScalarRing S, char Var = 'x'>
class Series {
  public:
    Series() = default;
    explicit Series(S c) { coeffs_.push_back(std::move(c)); strip(); }

    static Series zero() { return Series(); }
    static Series one() { return Series(S::one()); }
    static Series from_rational(const Rational &q) { return Series(S::from_rational(q)); }

    static Series monomial(long exp, S c = S::one()) {
        Series r;
        if (exp < 0) throw math_error("series monomial with negative exponent");
        r.coeffs_.assign(static_cast<std::size_t>(exp) + 1, S::zero());
        r.coeffs_.back() = std::move(c);
        r.strip();
        return r;
    }

    static Series zero_mod(long prec) {
        Series r;
        r.prec_ = prec < 0 ? 0 : prec;
        return r;
    }

    bool exact() const { return !prec_.has_value(); }
    std::optional<long> prec() const { return prec_; }
    long prec_or_inf() const { return prec_ ? *prec_ : PREC_INF; }

    // True when no nonzero coefficient is stored. An inexact value may still
    // differ from zero beyond its precision.
    bool is_zero() const { return coeffs_.empty(); }

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    std::optional<long> valuation() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return static_cast<long>(i);
        return std::nullopt;
    }

    S coeff(long i) const {
        if (i < 0 || i > degree()) return S::zero();
        return coeffs_[static_cast<std::size_t>(i)];
    }
    bool is_known(long i) const { return i < prec_or_inf(); }
    S constant_term() const { return coeff(0); }

    Series truncated(long p) const {
        Series r = *this;
        if (p < 0) p = 0;
        r.prec_ = prec_min(prec_or_inf(), p);
        if (static_cast<long>(r.coeffs_.size()) > *r.prec_)
            r.coeffs_.resize(static_cast<std::size_t>(*r.prec_));
        r.strip();
        if (*r.prec_ >= PREC_INF) r.prec_.reset();
        return r;
    }

    Series operator-() const {
        Series r = *this;
        for (auto &c : r.coeffs_) c = -c;
        return r;
    }

    friend Series operator+(const Series &a, const Series &b) {
        Series r;
        r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), S::zero());
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
        long p = prec_min(a.prec_or_inf(), b.prec_or_inf());
        if (p < PREC_INF) r.prec_ = p;
        r.clamp_to_prec();
        r.strip();
        return r;
    }
    friend Series operator-(const Series &a, const Series &b) { return a + (-b); }

    friend Series operator*(const Series &a, const Series &b) {
        if (a.exact() && a.coeffs_.empty()) return zero();
        if (b.exact() && b.coeffs_.empty()) return zero();
        long p = prec_min(prec_min(a.prec_or_inf(), b.prec_or_inf()),
                          prec_min(a.prec_or_inf() == PREC_INF ? PREC_INF : a.prec_or_inf() + b.val_for_prec(),
                                   b.prec_or_inf() == PREC_INF ? PREC_INF : b.prec_or_inf() + a.val_for_prec()));
        Series r;
        if (!a.coeffs_.empty() && !b.coeffs_.empty()) {
            long dmax = a.degree() + b.degree();
            if (dmax >= p) dmax = p - 1;
            if (dmax >= 0) {
                r.coeffs_.assign(static_cast<std::size_t>(dmax) + 1, S::zero());
                for (long i = 0; i <= a.degree(); ++i) {
                    if (a.coeffs_[static_cast<std::size_t>(i)].is_zero()) continue;
                    for (long j = 0; j <= b.degree() && i + j <= dmax; ++j)
                        r.coeffs_[static_cast<std::size_t>(i + j)] =
                            r.coeffs_[static_cast<std::size_t>(i + j)] +
                            a.coeffs_[static_cast<std::size_t>(i)] * b.coeffs_[static_cast<std::size_t>(j)];
                }
            }
        }
        if (p < PREC_INF) r.prec_ = p;
        r.strip();
        return r;
    }

    friend bool operator==(const Series &a, const Series &b) {
        return a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Series &a, const Series &b) { return !(a == b); }

    // Equality of every coefficient both sides know.
    friend bool agrees(const Series &a, const Series &b) {
        long p = prec_min(a.prec_or_inf(), b.prec_or_inf());
        long d = std::max(a.degree(), b.degree());
        for (long i = 0; i <= d && i < p; ++i)
            if (!(a.coeff(i) == b.coeff(i))) return false;
        return true;
    }

    // Termwise d/dVar; one order of precision is lost.
    Series derivative() const {
        Series r;
        for (long i = 1; i <= degree(); ++i)
            r.coeffs_.push_back(coeffs_[static_cast<std::size_t>(i)] * S::from_rational(Rational(i)));
        if (prec_) r.prec_ = std::max(0L, *prec_ - 1);
        r.clamp_to_prec();
        r.strip();
        return r;
    }

    Series derivative(long k) const {
        Series r = *this;
        for (long j = 0; j < k; ++j) r = r.derivative();
        return r;
    }

    // Antiderivative with zero constant term.
    Series antiderivative() const {
        Series r;
        if (!coeffs_.empty()) {
            r.coeffs_.assign(coeffs_.size() + 1, S::zero());
            for (long i = 0; i <= degree(); ++i)
                r.coeffs_[static_cast<std::size_t>(i) + 1] =
                    coeffs_[static_cast<std::size_t>(i)] * S::from_rational(Rational(1, i + 1));
        }
        if (prec_) r.prec_ = *prec_ + 1;
        r.strip();
        return r;
    }

    // Multiplicative inverse; requires an invertible constant term.
    Series inverse(long target_prec = PREC_INF) const;

    Series pow(long n) const {
        Series r = one();
        for (long i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    Series scaled(const S &c) const {
        if (c.is_zero()) return prec_ ? zero_mod(*prec_) : zero();
        Series r = *this;
        for (auto &x : r.coeffs_) x = x * c;
        r.strip();
        return r;
    }

    std::string str() const;

    static constexpr char var = Var;

  private:
    long val_for_prec() const {
        auto v = valuation();
        if (v) return *v;
        return prec_or_inf();
    }
    void clamp_to_prec() {
        if (prec_ && static_cast<long>(coeffs_.size()) > *prec_)
            coeffs_.resize(static_cast<std::size_t>(std::max(0L, *prec_)));
    }
    void strip() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<S> coeffs_;
    std::optional<long> prec_;
};

template <ScalarRing S, char Var>
Series<S, Var> Series<S, Var>::inverse(long target_prec) const {
    if (coeff(0).is_zero()) throw math_error("series inverse: constant term is zero");
    long p = prec_min(prec_or_inf(), target_prec);
    if (p >= PREC_INF)
        throw config_error("series inverse of an exact polynomial needs a target precision");
    // c0^{-1} via rational embedding only works over a field; handled by the
    // scalar's own inversion when available.
    S c0inv = scalar_inverse(coeff(0));
    Series r(c0inv);
    // Newton-free iteration: r <- r + r*(1 - a*r), gains one order per step.
    for (long step = 0; step < p; ++step) {
        Series err = (one() - (*this * r)).truncated(p);
        if (err.is_zero()) break;
        r = (r + r * err).truncated(p);
    }
    return r.truncated(p);
}

inline Rational scalar_inverse(const Rational &q) { return q.inverse(); }

template <ScalarRing S>
Dual<S> scalar_inverse(const Dual<S> &d) {
    S vi = scalar_inverse(d.value());
    return Dual<S>(vi, -(vi * vi * d.eps_part()));
}

template <ScalarRing S, char Var>
std::string Series<S, Var>::str() const {
    std::string out;
    for (long i = 0; i <= degree(); ++i) {
        S c = coeff(i);
        if (c.is_zero()) continue;
        std::string cs = scalar_str(c);
        bool neg = !cs.empty() && cs[0] == '-' && !needs_parens(cs);
        if (out.empty()) {
            if (neg) { out = "-"; cs = cs.substr(1); }
        } else {
            if (neg) { out += " - "; cs = cs.substr(1); }
            else out += " + ";
        }
        if (i == 0) {
            out += parenthesized(cs);
        } else if (cs == "1") {
            out += power_str(Var, i);
        } else {
            out += parenthesized(cs) + "*" + power_str(Var, i);
        }
    }
    if (out.empty()) out = "0";
    if (prec_) out += " (mod " + power_str(Var, *prec_ == 1 ? 1 : *prec_) + ")";
    return out;
}

template <ScalarRing S, char Var>
std::string scalar_str(const Series<S, Var> &s) { return s.str(); }

using XPoly = Series<Rational, 'x'>;

} // namespace satokp

#pragma once

#include "satokp/fmt_util.hpp"
#include "satokp/scalar.hpp"
#include "satokp/series.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace satokp {

// Laurent series over S: finitely many stored exponents starting at base_,
// exponents >= prec() unknown. No prec means an exact Laurent polynomial.
// The zero element is canonical (no stored terms, base 0).
template <ScalarRing S, char Var = 'z'>
class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(S c) {
        coeffs_.push_back(std::move(c));
        normalize();
    }

    static Laurent zero() { return Laurent(); }
    static Laurent one() { return Laurent(S::one()); }
    static Laurent from_rational(const Rational &q) { return Laurent(S::from_rational(q)); }

    static Laurent monomial(long exp, S c = S::one()) {
        Laurent r;
        r.base_ = exp;
        r.coeffs_.push_back(std::move(c));
        r.normalize();
        return r;
    }

    static Laurent zero_mod(long prec) {
        Laurent r;
        r.prec_ = prec;
        return r;
    }

    bool exact() const { return !prec_.has_value(); }
    std::optional<long> prec() const { return prec_; }
    long prec_or_inf() const { return prec_ ? *prec_ : PREC_INF; }

    bool is_zero() const { return coeffs_.empty(); }

    // Exponent of the lowest stored nonzero coefficient.
    std::optional<long> valuation() const {
        if (coeffs_.empty()) return std::nullopt;
        return base_;
    }

    long min_exp() const { return coeffs_.empty() ? 0 : base_; }
    long max_exp() const { return coeffs_.empty() ? -1 : base_ + static_cast<long>(coeffs_.size()) - 1; }

    S coeff(long e) const {
        if (coeffs_.empty() || e < base_ || e > max_exp()) return S::zero();
        return coeffs_[static_cast<std::size_t>(e - base_)];
    }
    bool is_known(long e) const { return e < prec_or_inf(); }

    S leading_coeff() const {
        if (coeffs_.empty()) throw math_error("leading coefficient of zero");
        return coeffs_.front();
    }

    Laurent truncated(long p) const {
        Laurent r = *this;
        r.prec_ = prec_min(prec_or_inf(), p);
        r.normalize();
        return r;
    }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto &c : r.coeffs_) c = -c;
        return r;
    }

    friend Laurent operator+(const Laurent &a, const Laurent &b) {
        Laurent r;
        if (a.coeffs_.empty() && b.coeffs_.empty()) {
            r.base_ = 0;
        } else {
            long lo = std::min(a.coeffs_.empty() ? b.base_ : a.base_, b.coeffs_.empty() ? a.base_ : b.base_);
            long hi = std::max(a.max_exp(), b.max_exp());
            r.base_ = lo;
            r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), S::zero());
            for (long e = lo; e <= hi; ++e) r.coeffs_[static_cast<std::size_t>(e - lo)] = a.coeff(e) + b.coeff(e);
        }
        long p = prec_min(a.prec_or_inf(), b.prec_or_inf());
        if (p < PREC_INF) r.prec_ = p;
        r.normalize();
        return r;
    }
    friend Laurent operator-(const Laurent &a, const Laurent &b) { return a + (-b); }

    friend Laurent operator*(const Laurent &a, const Laurent &b) {
        if (a.exact() && a.is_zero()) return zero();
        if (b.exact() && b.is_zero()) return zero();
        // prec(ab) <= min(prec_a + val_b, prec_b + val_a), capped by the
        // declared truncations; honest for negative valuations.
        long va = a.val_for_prec(), vb = b.val_for_prec();
        long p = prec_min(a.prec_or_inf(), b.prec_or_inf());
        if (a.prec_) p = prec_min(p, *a.prec_ + vb);
        if (b.prec_) p = prec_min(p, *b.prec_ + va);
        Laurent r;
        if (!a.coeffs_.empty() && !b.coeffs_.empty()) {
            long lo = a.base_ + b.base_;
            long hi = std::min(a.max_exp() + b.max_exp(), p - 1);
            if (hi >= lo) {
                r.base_ = lo;
                r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), S::zero());
                for (long i = a.base_; i <= a.max_exp(); ++i) {
                    if (a.coeff(i).is_zero()) continue;
                    for (long j = b.base_; j <= b.max_exp() && i + j <= hi; ++j)
                        r.coeffs_[static_cast<std::size_t>(i + j - lo)] =
                            r.coeffs_[static_cast<std::size_t>(i + j - lo)] + a.coeff(i) * b.coeff(j);
                }
            }
        }
        if (p < PREC_INF) r.prec_ = p;
        r.normalize();
        return r;
    }

    friend bool operator==(const Laurent &a, const Laurent &b) {
        return a.prec_ == b.prec_ && a.base_ == b.base_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Laurent &a, const Laurent &b) { return !(a == b); }

    friend bool agrees(const Laurent &a, const Laurent &b) {
        long p = prec_min(a.prec_or_inf(), b.prec_or_inf());
        long lo = std::min(a.min_exp(), b.min_exp());
        long hi = std::max(a.max_exp(), b.max_exp());
        for (long e = lo; e <= hi && e < p; ++e)
            if (!(a.coeff(e) == b.coeff(e))) return false;
        return true;
    }

    Laurent scaled(const S &c) const {
        if (c.is_zero()) return prec_ ? zero_mod(*prec_) : zero();
        Laurent r = *this;
        for (auto &x : r.coeffs_) x = x * c;
        r.normalize();
        return r;
    }

    Laurent shifted(long k) const {
        Laurent r = *this;
        r.base_ += k;
        if (r.prec_) *r.prec_ += k;
        return r;
    }

    // Inverse of a unit of S((Var)); needs an invertible leading coefficient.
    Laurent inverse(long target_prec = PREC_INF) const {
        if (coeffs_.empty()) throw math_error("inverse of zero");
        long v = base_;
        // Reduce to a unit of S[[Var]] and invert there.
        Laurent u = shifted(-v);
        long p = prec_min(u.prec_or_inf(), target_prec == PREC_INF ? PREC_INF : target_prec + v);
        if (p >= PREC_INF) throw config_error("laurent inverse of an exact value needs a target precision");
        S c0inv = scalar_inverse(u.coeff(0));
        Laurent r(c0inv);
        for (long step = 0; step < p; ++step) {
            Laurent err = (one() - (u * r)).truncated(p);
            if (err.is_zero()) break;
            r = (r + r * err).truncated(p);
        }
        return r.truncated(p).shifted(-v);
    }

    Laurent pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        Laurent r = one();
        for (long i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    template <char Var2>
    Laurent<S, Var2> renamed() const {
        Laurent<S, Var2> r;
        for (long e = min_exp(); e <= max_exp(); ++e)
            r = r + Laurent<S, Var2>::monomial(e, coeff(e));
        if (prec_) r = r.truncated(*prec_);
        return r;
    }

    std::string str() const {
        std::string out;
        for (long e = min_exp(); e <= max_exp(); ++e) {
            S c = coeff(e);
            if (c.is_zero()) continue;
            std::string cs = scalar_str(c);
            bool neg = !cs.empty() && cs[0] == '-' && !needs_parens(cs);
            if (out.empty()) {
                if (neg) { out = "-"; cs = cs.substr(1); }
            } else {
                if (neg) { out += " - "; cs = cs.substr(1); }
                else out += " + ";
            }
            if (e == 0) out += parenthesized(cs);
            else if (cs == "1") out += power_str(Var, e);
            else out += parenthesized(cs) + "*" + power_str(Var, e);
        }
        if (out.empty()) out = "0";
        if (prec_) out += " (mod " + power_str(Var, *prec_) + ")";
        return out;
    }

    static constexpr char var = Var;

  private:
    long val_for_prec() const {
        auto v = valuation();
        if (v) return *v;
        return prec_or_inf();
    }

    void normalize() {
        if (prec_) {
            long keep = *prec_ - base_;
            if (keep < 0) keep = 0;
            if (static_cast<long>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            base_ += static_cast<long>(lead);
        }
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
        if (coeffs_.empty()) base_ = 0;
    }

    long base_ = 0;
    std::vector<S> coeffs_;
    std::optional<long> prec_;
};

template <ScalarRing S, char Var>
std::string scalar_str(const Laurent<S, Var> &l) { return l.str(); }

using ZSeries = Laurent<Rational, 'z'>;

} // namespace satokp

#pragma once

#include "satokp/diffpoly.hpp"
#include "satokp/fmt_util.hpp"
#include "satokp/scalar.hpp"
#include "satokp/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <type_traits>

namespace satokp {

template <class C>
struct is_series_coeff : std::false_type {};
template <class S, char V>
struct is_series_coeff<Series<S, V>> : std::true_type {};

// Coefficient ring of the operator algebra: a scalar ring carrying the
// derivation d (x-derivative for series, total derivative for diffpolys).
template <class C>
concept CoeffRing = ScalarRing<C> && requires(const C c) {
    { c.derivative() } -> std::same_as<C>;
};

// Formal pseudo-differential operator sum_i a_i d^i with the Leibniz product.
//
// Values are finite term maps plus two optional trusted windows:
//   depth:  d-exponents below depth are unknown (dropped);
//   wtrust: weights above wtrust are unknown, where weight(x^p d^i) = p - i
//           grades the action on V = E/Ex (series coefficients only).
// Arithmetic computes the provable window of each result; exact values
// (no window) stay exact whenever the Leibniz sums terminate.
template <CoeffRing C>
class PsiDO {
  public:
    PsiDO() = default;

    static PsiDO zero() { return PsiDO(); }
    static PsiDO one() { return monomial(0, C::one()); }
    static PsiDO from_rational(const Rational &q) { return monomial(0, C::from_rational(q)); }
    static PsiDO dd(long i = 1) { return monomial(i, C::one()); }
    static PsiDO monomial(long i, C c) {
        PsiDO r;
        if (!c.is_zero()) r.terms_.emplace(i, std::move(c));
        return r;
    }

    const std::map<long, C> &terms() const { return terms_; }
    C coefficient(long i) const {
        auto it = terms_.find(i);
        return it == terms_.end() ? C::zero() : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::optional<long> order() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.rbegin()->first;
    }

    std::optional<long> depth() const { return depth_; }
    std::optional<long> weight_trust() const { return wtrust_; }
    bool exact() const { return !depth_ && !wtrust_; }

    PsiDO truncated_depth(long t) const {
        PsiDO r = *this;
        r.depth_ = r.depth_ ? std::max(*r.depth_, t) : t;
        r.normalize();
        return r;
    }
    PsiDO truncated_weight(long w) const {
        static_assert(is_series_coeff<C>::value, "weight windows need series coefficients");
        PsiDO r = *this;
        r.wtrust_ = r.wtrust_ ? std::min(*r.wtrust_, w) : w;
        r.normalize();
        return r;
    }

    // Projections onto d-exponents >= 0 / < 0. They are complementary and
    // idempotent; the differential part of a depth-trusted operator with
    // depth <= 0 is fully known.
    PsiDO split_plus() const {
        PsiDO r;
        for (const auto &[i, c] : terms_)
            if (i >= 0) r.terms_.emplace(i, c);
        r.wtrust_ = wtrust_;
        if (depth_ && *depth_ > 0) r.depth_ = depth_;
        r.normalize();
        return r;
    }
    PsiDO split_minus() const {
        PsiDO r;
        for (const auto &[i, c] : terms_)
            if (i < 0) r.terms_.emplace(i, c);
        r.depth_ = depth_;
        r.wtrust_ = wtrust_;
        r.normalize();
        return r;
    }

    bool is_differential() const {
        for (const auto &[i, c] : terms_)
            if (i < 0) return false;
        return true;
    }
    bool is_volterra() const {
        for (const auto &[i, c] : terms_)
            if (i >= 0) return false;
        return true;
    }

    PsiDO operator-() const {
        PsiDO r = *this;
        for (auto &[i, c] : r.terms_) c = -c;
        return r;
    }

    friend PsiDO operator+(const PsiDO &a, const PsiDO &b) {
        PsiDO r = a;
        for (const auto &[i, c] : b.terms_) {
            auto [it, inserted] = r.terms_.emplace(i, c);
            if (!inserted) it->second = it->second + c;
        }
        r.depth_ = max_opt(a.depth_, b.depth_);
        r.wtrust_ = min_opt(a.wtrust_, b.wtrust_);
        r.normalize();
        return r;
    }
    friend PsiDO operator-(const PsiDO &a, const PsiDO &b) { return a + (-b); }

    friend PsiDO operator*(const PsiDO &a, const PsiDO &b) { return mul(a, b); }

    PsiDO pow(long n) const {
        if (n < 0) throw math_error("operator power with negative exponent");
        PsiDO r = one();
        for (long i = 0; i < n; ++i) r = mul(r, *this);
        return r;
    }

    friend PsiDO comm(const PsiDO &a, const PsiDO &b) { return mul(a, b) - mul(b, a); }

    friend bool operator==(const PsiDO &a, const PsiDO &b) {
        return a.depth_ == b.depth_ && a.wtrust_ == b.wtrust_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PsiDO &a, const PsiDO &b) { return !(a == b); }

    // Coefficientwise equality on the window both operands trust.
    friend bool agrees(const PsiDO &a, const PsiDO &b) {
        auto t = max_opt(a.depth_, b.depth_);
        auto w = min_opt(a.wtrust_, b.wtrust_);
        auto probe = [&](const PsiDO &x, const PsiDO &y) {
            for (const auto &[i, c] : x.terms_) {
                if (t && i < *t) continue;
                C cx = window_coeff(x, i, w), cy = window_coeff(y, i, w);
                if constexpr (is_series_coeff<C>::value) {
                    if (!agrees(cx, cy)) return false;
                } else {
                    if (!(cx == cy)) return false;
                }
            }
            return true;
        };
        return probe(a, b) && probe(b, a);
    }

    // Inverse of 1 + (strictly negative exponents), by the geometric series.
    // Needs a finite depth or weight window to terminate.
    PsiDO inv_unitriangular() const {
        if (!(coefficient(0) == C::one())) throw math_error("inverse needs constant term 1");
        PsiDO n = one() - *this; // strictly negative exponents
        if (!n.is_volterra() && !n.is_zero()) throw math_error("inverse needs an operator in 1 + E_-");
        if (!depth_ && !wtrust_ && !n.is_zero())
            throw config_error("unitriangular inverse of an exact operator needs a truncation window");
        // The inverse is determined on the same window as the input: the
        // geometric series is truncated back to it each round, so terms of
        // order below the depth (or weight above the window) vanish.
        auto clamp = [&](PsiDO v) {
            if (depth_) v = v.truncated_depth(*depth_);
            if (wtrust_) v = v.truncated_weight(*wtrust_);
            return v;
        };
        PsiDO acc = clamp(one().carrying(depth_, wtrust_));
        PsiDO p = acc;
        for (long guard = 0; guard < 65536; ++guard) {
            p = clamp(mul(p, n));
            if (p.is_zero()) return acc;
            acc = acc + p;
        }
        throw config_error("unitriangular inverse did not terminate; add a depth or weight window");
    }

    template <class C2, class F>
    PsiDO<C2> mapped(F f) const {
        PsiDO<C2> r;
        for (const auto &[i, c] : terms_) r = r + PsiDO<C2>::monomial(i, f(c));
        if (depth_) r = r.truncated_depth(*depth_);
        if (wtrust_) {
            if constexpr (is_series_coeff<C2>::value) r = r.truncated_weight(*wtrust_);
        }
        return r;
    }

    std::string str() const;

  private:
    static std::optional<long> max_opt(std::optional<long> a, std::optional<long> b) {
        if (!a) return b;
        if (!b) return a;
        return std::max(*a, *b);
    }
    static std::optional<long> min_opt(std::optional<long> a, std::optional<long> b) {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    }

    PsiDO carrying(std::optional<long> d, std::optional<long> w) const {
        PsiDO r = *this;
        r.depth_ = d;
        r.wtrust_ = w;
        r.normalize();
        return r;
    }

    // Coefficient restricted to the weight window at exponent i.
    static C window_coeff(const PsiDO &x, long i, std::optional<long> w) {
        C c = x.coefficient(i);
        if constexpr (is_series_coeff<C>::value) {
            if (w) c = poly_degree_cut(c, *w + i);
        }
        return c;
    }

    template <class S, char V>
    static Series<S, V> poly_degree_cut(const Series<S, V> &s, long maxdeg) {
        Series<S, V> r;
        for (long p = 0; p <= s.degree() && p <= maxdeg; ++p)
            r = r + Series<S, V>::monomial(p, s.coeff(p));
        return r;
    }

    // Highest possibly-present exponent (stored or hidden below the window).
    static std::optional<long> order_bound(const PsiDO &x) {
        std::optional<long> o = x.order();
        if (x.depth_) o = max_opt(o, *x.depth_ - 1);
        return o;
    }

    // Lowest possibly-present weight.
    static long min_weight_bound(const PsiDO &x) {
        long m = PREC_INF;
        if constexpr (is_series_coeff<C>::value) {
            for (const auto &[i, c] : x.terms_) {
                auto v = c.valuation();
                if (v) m = std::min(m, *v - i);
            }
        }
        if (x.wtrust_) m = std::min(m, *x.wtrust_ + 1);
        return m;
    }

    static PsiDO mul(const PsiDO &a, const PsiDO &b) {
        if (a.is_zero() && a.exact()) return zero();
        if (b.is_zero() && b.exact()) return zero();

        std::optional<long> t;
        if (a.depth_) {
            auto ob = order_bound(b);
            t = ob ? std::optional<long>(*a.depth_ + *ob) : std::nullopt;
            if (a.depth_ && !ob) t = std::nullopt; // b identically zero handled above
        }
        if (b.depth_) {
            auto oa = order_bound(a);
            if (oa) t = max_opt(t, *b.depth_ + *oa);
        }

        std::optional<long> w;
        if constexpr (is_series_coeff<C>::value) {
            if (a.wtrust_) w = *a.wtrust_ + min_weight_bound(b);
            if (b.wtrust_) w = min_opt(w, *b.wtrust_ + min_weight_bound(a));
        } else {
            if (a.wtrust_ || b.wtrust_) throw config_error("weight windows need series coefficients");
        }

        PsiDO r;
        for (const auto &[i, ai] : a.terms_) {
            if constexpr (is_series_coeff<C>::value) {
                if (!ai.exact()) throw config_error("operator coefficients must be exact in the outer variable");
            }
            for (const auto &[j, bj] : b.terms_) {
                if constexpr (is_series_coeff<C>::value) {
                    if (!bj.exact()) throw config_error("operator coefficients must be exact in the outer variable");
                }
                long kmax = -1;
                bool bounded = false;
                if (i >= 0) { kmax = i; bounded = true; }
                if constexpr (is_series_coeff<C>::value) {
                    long db = bj.degree();
                    if (!bounded || db < kmax) kmax = db;
                    bounded = true;
                } else {
                    if (t) {
                        long kb = i + j - *t;
                        if (!bounded || kb < kmax) kmax = kb;
                        bounded = true;
                    }
                }
                if (!bounded)
                    throw config_error("Leibniz tail does not terminate; a depth window is required");
                if (t) kmax = std::min(kmax, i + j - *t);
                C dk = bj;
                for (long k = 0; k <= kmax; ++k) {
                    if (k > 0) dk = dk.derivative();
                    if (dk.is_zero()) break;
                    C term = ai * dk;
                    if (k > 0) term = term * C::from_rational(gen_binomial(i, k));
                    if (term.is_zero()) continue;
                    auto [it, inserted] = r.terms_.emplace(i + j - k, term);
                    if (!inserted) it->second = it->second + term;
                }
            }
        }
        r.depth_ = t;
        if constexpr (is_series_coeff<C>::value) r.wtrust_ = w;
        r.normalize();
        return r;
    }

    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (depth_ && it->first < *depth_) {
                it = terms_.erase(it);
                continue;
            }
            if constexpr (is_series_coeff<C>::value) {
                if (wtrust_) it->second = poly_degree_cut(it->second, *wtrust_ + it->first);
            }
            if (it->second.is_zero())
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    std::map<long, C> terms_;
    std::optional<long> depth_;
    std::optional<long> wtrust_;

    template <CoeffRing C2>
    friend class PsiDO;
};

template <CoeffRing C>
std::string PsiDO<C>::str() const {
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[i, c] = *it;
        std::string cs = scalar_str(c);
        bool neg = !cs.empty() && cs[0] == '-' && !needs_parens(cs);
        if (out.empty()) {
            if (neg) { out = "-"; cs = cs.substr(1); }
        } else {
            if (neg) { out += " - "; cs = cs.substr(1); }
            else out += " + ";
        }
        if (i == 0) out += parenthesized(cs);
        else if (cs == "1") out += power_str('d', i);
        else out += parenthesized(cs) + "*" + power_str('d', i);
    }
    if (out.empty()) out = "0";
    if (depth_) out += " (mod d^" + std::to_string(*depth_ - 1) + ")";
    if (wtrust_) out += " (mod wt " + std::to_string(*wtrust_ + 1) + ")";
    return out;
}

using PdoSeries = PsiDO<XPoly>;
using PdoDiff = PsiDO<DiffPoly>;

} // namespace satokp

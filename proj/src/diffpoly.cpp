#include "satokp/diffpoly.hpp"

#include <algorithm>
#include <set>

namespace satokp {

long DiffMonomial::total_degree() const {
    long d = 0;
    for (const auto &[v, e] : factors_) d += e;
    return d;
}

DiffMonomial DiffMonomial::times(const DiffVar &v, long e) const {
    DiffMonomial r = *this;
    auto it = std::lower_bound(r.factors_.begin(), r.factors_.end(), v,
                               [](const auto &p, const DiffVar &w) { return p.first < w; });
    if (it != r.factors_.end() && it->first == v)
        it->second += e;
    else
        r.factors_.insert(it, {v, e});
    return r;
}

DiffMonomial operator*(const DiffMonomial &a, const DiffMonomial &b) {
    DiffMonomial r = a;
    for (const auto &[v, e] : b.factors_) r = r.times(v, e);
    return r;
}

bool graded_lex_less(const DiffMonomial &a, const DiffMonomial &b) {
    long da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // Expand to flat sorted variable lists so u1*u1 vs u1*u2 compares evenly.
    auto flat = [](const DiffMonomial &m) {
        std::vector<DiffVar> out;
        for (const auto &[v, e] : m.factors())
            for (long i = 0; i < e; ++i) out.push_back(v);
        return out;
    };
    return flat(a) < flat(b);
}

std::string DiffMonomial::str() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto &[v, e] : factors_) {
        for (long i = 0; i < e; ++i) {
            if (!out.empty()) out += "*";
            out += "u" + std::to_string(v.gen);
            if (v.ord > 0 && v.ord <= 4)
                out += std::string(static_cast<std::size_t>(v.ord), '\'');
            else if (v.ord > 4)
                out += "^(" + std::to_string(v.ord) + ")";
        }
    }
    return out;
}

DiffPoly DiffPoly::from_rational(const Rational &q) {
    DiffPoly r;
    r.add_term(DiffMonomial::unit(), q);
    return r;
}

DiffPoly DiffPoly::var(long gen, long ord) {
    if (gen < 1 || ord < 0) throw math_error("diffpoly variable needs gen >= 1, ord >= 0");
    DiffPoly r;
    r.add_term(DiffMonomial(DiffVar{gen, ord}), Rational::one());
    return r;
}

DiffPoly DiffPoly::term(DiffMonomial m, Rational c) {
    DiffPoly r;
    r.add_term(m, c);
    return r;
}

bool DiffPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational DiffPoly::coefficient(const DiffMonomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational::zero() : it->second;
}

void DiffPoly::add_term(const DiffMonomial &m, const Rational &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r;
    for (const auto &[m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

DiffPoly operator+(const DiffPoly &a, const DiffPoly &b) {
    DiffPoly r = a;
    for (const auto &[m, c] : b.terms_) r.add_term(m, c);
    return r;
}

DiffPoly operator-(const DiffPoly &a, const DiffPoly &b) { return a + (-b); }

DiffPoly operator*(const DiffPoly &a, const DiffPoly &b) {
    DiffPoly r;
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

DiffPoly DiffPoly::scaled(const Rational &c) const {
    DiffPoly r;
    if (c.is_zero()) return r;
    for (const auto &[m, q] : terms_) r.terms_.emplace(m, q * c);
    return r;
}

DiffPoly DiffPoly::pow(long n) const {
    DiffPoly r = one();
    for (long i = 0; i < n; ++i) r = r * *this;
    return r;
}

DiffPoly DiffPoly::derivative() const {
    DiffPoly r;
    for (const auto &[m, c] : terms_) {
        const auto &fs = m.factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            // d(v^e * rest) contributes e * v^{e-1} * v' * rest.
            DiffMonomial dm;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                long e = fs[j].second - (i == j ? 1 : 0);
                if (e > 0) dm = dm.times(fs[j].first, e);
            }
            dm = dm.times(DiffVar{fs[i].first.gen, fs[i].first.ord + 1});
            r.add_term(dm, c * Rational(fs[i].second));
        }
    }
    return r;
}

DiffPoly DiffPoly::derivative(long k) const {
    DiffPoly r = *this;
    for (long i = 0; i < k; ++i) r = r.derivative();
    return r;
}

bool DiffPoly::contains_generator(long gen) const {
    for (const auto &[m, c] : terms_)
        for (const auto &[v, e] : m.factors())
            if (v.gen == gen) return true;
    return false;
}

long DiffPoly::max_generator() const {
    long g = 0;
    for (const auto &[m, c] : terms_)
        for (const auto &[v, e] : m.factors()) g = std::max(g, v.gen);
    return g;
}

namespace {

// Expand nested bindings until every right side is free of bound
// generators. Cycles make that impossible.
std::map<long, DiffPoly> close_bindings(const std::map<long, DiffPoly> &bindings) {
    std::map<long, DiffPoly> closed = bindings;
    for (long round = 0, n = static_cast<long>(bindings.size()); round <= n; ++round) {
        bool dirty = false;
        for (auto &[g, p] : closed) {
            for (const auto &[h, q] : closed) {
                if (h != g && p.contains_generator(h)) {
                    std::map<long, DiffPoly> one{{h, q}};
                    p = p.substitute(one);
                    dirty = true;
                }
            }
            if (p.contains_generator(g)) throw math_error("circular binding for u" + std::to_string(g));
        }
        if (!dirty) return closed;
    }
    throw math_error("circular binding chain");
}

} // namespace

DiffPoly DiffPoly::substitute(const std::map<long, DiffPoly> &bindings) const {
    // Identity entries are no-ops, not cycles.
    std::map<long, DiffPoly> pruned;
    for (const auto &[g, p] : bindings)
        if (!(p == var(g))) pruned.emplace(g, p);

    bool nested = false;
    for (const auto &[g, p] : pruned) {
        if (p.contains_generator(g)) throw math_error("circular binding for u" + std::to_string(g));
        for (const auto &[h, q] : pruned)
            if (h != g && p.contains_generator(h)) nested = true;
    }
    std::map<long, DiffPoly> closed;
    if (nested) closed = close_bindings(pruned);
    const auto &binds = nested ? closed : pruned;

    DiffPoly out;
    for (const auto &[m, c] : terms_) {
        DiffPoly acc = from_rational(c);
        for (const auto &[v, e] : m.factors()) {
            auto it = binds.find(v.gen);
            DiffPoly factor = (it == binds.end()) ? var(v.gen, v.ord) : it->second.derivative(v.ord);
            acc = acc * factor.pow(e);
        }
        out = out + acc;
    }
    return out;
}

std::string DiffPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto &[m, c] : terms_) {
        Rational a = c;
        if (out.empty()) {
            if (a.sign() < 0) { out = "-"; a = -a; }
        } else {
            if (a.sign() < 0) { out += " - "; a = -a; }
            else out += " + ";
        }
        if (m.is_unit()) out += a.str();
        else if (a.is_one()) out += m.str();
        else out += a.str() + "*" + m.str();
    }
    return out;
}

std::string scalar_str(const DiffPoly &p) { return p.str(); }

} // namespace satokp

#pragma once

#include "satokp/scalar.hpp"

#include <string>

namespace satokp {

// Nilpotent extension S[eps]/(eps^2), used for first-order deformations.
template <ScalarRing S>
class Dual {
  public:
    Dual() : a_(S::zero()), b_(S::zero()) {}
    Dual(S value, S eps) : a_(std::move(value)), b_(std::move(eps)) {}

    static Dual zero() { return Dual(); }
    static Dual one() { return Dual(S::one(), S::zero()); }
    static Dual from_rational(const Rational &q) { return Dual(S::from_rational(q), S::zero()); }
    static Dual eps() { return Dual(S::zero(), S::one()); }

    const S &value() const { return a_; }
    const S &eps_part() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Dual operator-() const { return Dual(-a_, -b_); }
    friend Dual operator+(const Dual &x, const Dual &y) { return Dual(x.a_ + y.a_, x.b_ + y.b_); }
    friend Dual operator-(const Dual &x, const Dual &y) { return Dual(x.a_ - y.a_, x.b_ - y.b_); }
    friend Dual operator*(const Dual &x, const Dual &y) {
        // (a + eps b)(c + eps d) = ac + eps(ad + bc); eps^2 dies.
        return Dual(x.a_ * y.a_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    friend bool operator==(const Dual &x, const Dual &y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Dual &x, const Dual &y) { return !(x == y); }

  private:
    S a_, b_;
};

using DualScalar = Dual<Rational>;

} // namespace satokp

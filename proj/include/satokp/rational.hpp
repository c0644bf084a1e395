#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace satokp {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible truncation orders, coefficient rings or variable tags.
struct config_error : error {
    using error::error;
};

// Division by a non-unit, operator not unitriangular, point outside the big
// cell, and similar mathematical preconditions.
struct math_error : error {
    using error::error;
};

struct parse_error : error {
    parse_error(const std::string &msg, std::size_t pos)
        : error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Exact rational scalar. Always reduced, denominator > 0 (mpq invariants).
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw math_error("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class &v) : v_(v) { v_.canonicalize(); }
    explicit Rational(const std::string &s) : v_(s) { v_.canonicalize(); }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }
    static Rational from_rational(const Rational &q) { return q; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(static_cast<mpq_class>(-v_)); }
    Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
    Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
    Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
    Rational &operator/=(const Rational &o) {
        if (o.is_zero()) throw math_error("division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational &a, const Rational &b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.v_ < b.v_; }

    Rational inverse() const {
        if (is_zero()) throw math_error("inverse of zero");
        return Rational(static_cast<mpq_class>(1 / v_));
    }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }
    bool denominator_is_one() const { return v_.get_den() == 1; }

    std::string str() const { return v_.get_str(); }

  private:
    mpq_class v_;
};

// i(i-1)...(i-k+1), any integer i, k >= 0.
inline Rational falling_factorial(long i, long k) {
    Rational r = Rational::one();
    for (long j = 0; j < k; ++j) r *= Rational(i - j);
    return r;
}

// Generalized binomial i(i-1)...(i-k+1)/k!, any integer upper index.
inline Rational gen_binomial(long i, long k) {
    if (k < 0) return Rational::zero();
    Rational r = falling_factorial(i, k);
    for (long j = 2; j <= k; ++j) r /= Rational(j);
    return r;
}

inline Rational factorial(long n) {
    Rational r = Rational::one();
    for (long j = 2; j <= n; ++j) r *= Rational(j);
    return r;
}

} // namespace satokp

#pragma once

#include "satokp/rational.hpp"

#include <concepts>

namespace satokp {

// Commutative ring with a distinguished embedding of the rationals.
template <class S>
concept ScalarRing = requires(const S a, const S b, const Rational q) {
    { S::zero() } -> std::same_as<S>;
    { S::one() } -> std::same_as<S>;
    { S::from_rational(q) } -> std::same_as<S>;
    { a + b } -> std::same_as<S>;
    { a - b } -> std::same_as<S>;
    { a * b } -> std::same_as<S>;
    { -a } -> std::same_as<S>;
    { a.is_zero() } -> std::same_as<bool>;
    { a == b } -> std::convertible_to<bool>;
};

} // namespace satokp

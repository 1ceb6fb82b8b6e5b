#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <numeric>
#include <string>

#include "subspec/errors.hpp"

namespace subspec {

using Rational = boost::rational<long long>;

/// Reduce a rational into the fundamental domain [0, 1).
inline Rational mod1(const Rational& r) {
    long long n = r.numerator(), d = r.denominator(); // d > 0 by boost invariant
    long long m = n % d;
    if (m < 0) m += d;
    return Rational(m, d);
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// lcm with an overflow guard; the exact engines only ever see small
/// denominators, so a hard cap is enough.
inline long long checked_lcm(long long a, long long b) {
    long long g = std::gcd(a, b);
    long long q = a / g;
    constexpr long long kCap = 2'000'000;
    if (q > kCap / b) throw Error("lcm overflow: denominators too large for exact arithmetic");
    return q * b;
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace subspec

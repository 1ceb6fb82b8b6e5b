#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "subspec/errors.hpp"

namespace subspec {

/// Exact dyadic rational num / 2^exp, normalized so that num is odd or
/// zero (zero has exp 0). All point-set audits run on this type so the
/// predicates are exact.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long long num, int exp = 0) : num_(num), exp_(exp) { normalize(); }

    static Dyadic from_int(long long n) { return Dyadic(n, 0); }
    /// 2^{-e} for e >= 0.
    static Dyadic pow2_inv(int e) { return Dyadic(1, e); }

    long long num() const { return num_; }
    int exp() const { return exp_; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        return Dyadic(shifted(a, e) + shifted(b, e), e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
        int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        return Dyadic(shifted(a, e) - shifted(b, e), e);
    }
    Dyadic operator-() const { return Dyadic(-num_, exp_); }
    friend Dyadic operator*(const Dyadic& a, long long c) { return Dyadic(a.num_ * c, a.exp_); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
    }
    /// Multiply by 2^{-e} (e may be negative).
    Dyadic shift_right(int e) const { return Dyadic(num_, exp_ + e); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.num_ == b.num_ && a.exp_ == b.exp_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
        return shifted(a, e) <=> shifted(b, e);
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(1LL << exp_); }

    /// Rendered as "num/2^exp" (integers as plain numbers).
    std::string to_string() const {
        if (exp_ == 0) return std::to_string(num_);
        return std::to_string(num_) + "/2^" + std::to_string(exp_);
    }

private:
    static long long shifted(const Dyadic& d, int e) {
        int s = e - d.exp_;
        if (s >= 62) throw Error("dyadic shift overflow");
        return d.num_ << s;
    }
    void normalize() {
        if (num_ == 0) { exp_ = 0; return; }
        while (exp_ > 0 && (num_ & 1) == 0) { num_ >>= 1; --exp_; }
        if (exp_ < 0) {
            if (-exp_ >= 62) throw Error("dyadic exponent overflow");
            num_ <<= -exp_;
            exp_ = 0;
        }
    }

    long long num_ = 0;
    int exp_ = 0;
};

} // namespace subspec

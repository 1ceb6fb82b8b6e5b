#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "subspec/rational.hpp"

namespace subspec {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Numeric context for the formal irrational phi. Exact logic consults
/// the flag: when phi is declared rational its exact fraction is folded
/// into angle comparisons; the floating value is only used to evaluate
/// unit complexes.
struct PhiContext {
    double phi = 0.0;
    bool is_rational = false;
    Rational fraction{0, 1};

    static PhiContext irrational(double value) {
        PhiContext c;
        c.phi = value;
        c.is_rational = false;
        return c;
    }
    static PhiContext rational(const Rational& f) {
        PhiContext c;
        c.fraction = mod1(f);
        c.phi = to_double(c.fraction);
        c.is_rational = true;
        return c;
    }
};

/// Exact circle element q + k*phi (mod 1) with q rational in [0,1) and
/// k an integer coefficient of the formal irrational phi. Addition and
/// negation are exact; equality is componentwise after normalization.
struct Angle {
    Rational q{0, 1};
    long long k = 0;

    Angle() = default;
    Angle(Rational q_, long long k_ = 0) : q(mod1(q_)), k(k_) {}

    friend Angle operator+(const Angle& a, const Angle& b) { return Angle(a.q + b.q, a.k + b.k); }
    friend Angle operator-(const Angle& a, const Angle& b) { return Angle(a.q - b.q, a.k - b.k); }
    Angle operator-() const { return Angle(-q, -k); }
    friend Angle operator*(long long n, const Angle& a) { return Angle(Rational(n, 1) * a.q, n * a.k); }

    friend bool operator==(const Angle& a, const Angle& b) { return a.q == b.q && a.k == b.k; }
    friend bool operator<(const Angle& a, const Angle& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.q < b.q;
    }

    bool is_zero() const { return k == 0 && q.numerator() == 0; }
};

/// Fold the phi coefficient into the rational part when the context
/// declares phi rational. Canonical angles compare correctly across
/// representations that coincide under a rational phi.
inline Angle canonical(const Angle& a, const PhiContext& ctx) {
    if (!ctx.is_rational || a.k == 0) return a;
    return Angle(a.q + Rational(a.k, 1) * ctx.fraction, 0);
}

inline bool equal_in_ctx(const Angle& a, const Angle& b, const PhiContext& ctx) {
    return canonical(a, ctx) == canonical(b, ctx);
}

inline bool is_zero_in_ctx(const Angle& a, const PhiContext& ctx) {
    return canonical(a, ctx).is_zero();
}

/// Exact rational value of the angle if it has one (k == 0, or rational
/// phi); nullopt for genuinely irrational angles.
inline std::optional<Rational> reduced_rational(const Angle& a, const PhiContext& ctx) {
    Angle c = canonical(a, ctx);
    if (c.k == 0) return c.q;
    return std::nullopt;
}

/// Order of the angle in the circle group: smallest n >= 1 with n*a = 0
/// (mod 1), or nullopt when the angle is irrational (infinite order).
inline std::optional<long long> circle_order(const Angle& a, const PhiContext& ctx) {
    auto r = reduced_rational(a, ctx);
    if (!r) return std::nullopt;
    return r->numerator() == 0 ? 1 : r->denominator();
}

/// e^{2 pi i (q + k phi)} at the context's precision.
inline std::complex<double> eval_unit(const Angle& t, const PhiContext& ctx) {
    double v = to_double(t.q) + static_cast<double>(t.k) * ctx.phi;
    return std::polar(1.0, kTwoPi * v);
}

/// Rendered as "q" or "q+k*phi" with an exact rational q.
inline std::string to_string(const Angle& a) {
    if (a.k == 0) return to_string(a.q);
    std::string s = a.q.numerator() == 0 ? std::string() : to_string(a.q);
    if (!s.empty() && a.k > 0) s += "+";
    if (a.k == -1) s += "-";
    else if (a.k != 1) s += std::to_string(a.k) + "*";
    s += "phi";
    return s;
}

} // namespace subspec

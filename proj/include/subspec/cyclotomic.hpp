#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <mutex>
#include <vector>

#include "subspec/angle.hpp"

namespace subspec {

enum class ZeroCheck { Zero, NonZero, Unknown };

namespace detail {

using BigInt = boost::multiprecision::cpp_int;
using Poly = std::vector<BigInt>; // coefficient vector, index = degree

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Exact division by a monic divisor; remainder is discarded (callers
/// only divide exactly or want the remainder separately).
inline Poly poly_div_monic(const Poly& num, const Poly& den, Poly* remainder = nullptr) {
    Poly r = num;
    Poly q;
    if (r.size() >= den.size()) q.assign(r.size() - den.size() + 1, BigInt(0));
    while (r.size() >= den.size()) {
        BigInt c = r.back();
        std::size_t shift = r.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) r[shift + i] -= c * den[i];
        poly_trim(r);
    }
    if (remainder) *remainder = std::move(r);
    return q;
}

/// n-th cyclotomic polynomial, memoized. Computed as
/// (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline const Poly& cyclotomic_poly(long long n) {
    static std::map<long long, Poly> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    Poly num(static_cast<std::size_t>(n) + 1, BigInt(0));
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (long long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        // recursive fill of the memo; recompute lookup after recursion
        // is not needed because the lock is already held: inline compute
        auto jt = memo.find(d);
        if (jt == memo.end()) {
            // compute Phi_d with the same formula (divisors of d < n are
            // already present by induction order)
            Poly nd(static_cast<std::size_t>(d) + 1, BigInt(0));
            nd[0] = -1;
            nd[static_cast<std::size_t>(d)] = 1;
            for (long long e = 1; e < d; ++e) {
                if (d % e != 0) continue;
                nd = poly_div_monic(nd, memo.at(e));
            }
            jt = memo.emplace(d, std::move(nd)).first;
        }
        num = poly_div_monic(num, jt->second);
    }
    return memo.emplace(n, std::move(num)).first->second;
}

/// Exact test: does sum_i mult_i * zeta_N^{e_i} vanish? Equivalent to
/// Phi_N dividing the exponent polynomial.
inline bool root_sum_is_zero(long long N, const std::vector<std::pair<long long, long long>>& exp_mult) {
    Poly p(static_cast<std::size_t>(N), BigInt(0));
    bool any = false;
    for (auto [e, m] : exp_mult) {
        p[static_cast<std::size_t>(e % N)] += m;
        any = true;
    }
    poly_trim(p);
    if (p.empty()) return true;
    if (!any) return true;
    Poly rem;
    poly_div_monic(p, cyclotomic_poly(N), &rem);
    return rem.empty();
}

} // namespace detail

/// Exact vanishing test for a sum of rational roots of unity given by
/// their angles p_i/q_i: works in the cyclotomic field of order
/// lcm(q_i).
inline bool rational_angle_sum_is_zero(const std::vector<Rational>& angles) {
    if (angles.empty()) return true;
    long long N = 1;
    for (const auto& a : angles) N = checked_lcm(N, mod1(a).denominator());
    std::vector<std::pair<long long, long long>> exp_mult;
    exp_mult.reserve(angles.size());
    for (const auto& a : angles) {
        Rational r = mod1(a);
        exp_mult.emplace_back(r.numerator() * (N / r.denominator()), 1);
    }
    return detail::root_sum_is_zero(N, exp_mult);
}

/// Exact vanishing test for sum_i e^{2 pi i t_i}. Terms are grouped by
/// their phi coefficient; each group is decided exactly in a cyclotomic
/// field. For irrational phi the groups are treated as linearly
/// independent over the rationals, so a single nonzero group already
/// decides NonZero. Unknown is reserved for inputs outside this model
/// and is not produced for the supported alphabets.
inline ZeroCheck exact_sum_is_zero(const std::vector<Angle>& ts, const PhiContext& ctx) {
    std::map<long long, std::vector<Rational>> groups;
    for (const auto& t : ts) {
        Angle c = canonical(t, ctx);
        groups[c.k].push_back(c.q);
    }
    for (const auto& [k, qs] : groups) {
        if (!rational_angle_sum_is_zero(qs)) return ZeroCheck::NonZero;
    }
    return ZeroCheck::Zero;
}

} // namespace subspec

#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "subspec/substitution.hpp"

namespace subspec {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Recurrence data

/// Character values of the columns of a bijective constant-length rule,
/// kept as exact angles: c_r = chi(beta_r).
struct BijectiveRecurrenceSpec {
    long long L = 2;
    long long s = 0; // shift of the pseudo-fixed normalization (metadata; the limit recurrences do not depend on it)
    std::vector<Angle> c;
};

/// Build the recurrence data from a translation rule and a character.
inline BijectiveRecurrenceSpec make_bijective_spec(const ConstantLengthGroup& rule,
                                                   const Character& chi, long long s = 0) {
    if (!rule.all_translations())
        throw HypothesisViolation("translation_columns",
                                  "autocorrelation recurrences require translation columns");
    BijectiveRecurrenceSpec spec;
    spec.L = rule.length();
    spec.s = s;
    spec.c.reserve(rule.columns.size());
    for (const auto& col : rule.columns) spec.c.push_back(character_angle(chi, col.letter));
    return spec;
}

/// eta(1) = sum_{r<L-1} c_r conj(c_{r+1}) / (L - c_{L-1} conj(c_0)),
/// assembled from exact angle differences and evaluated at the
/// context's precision. The denominator modulus is at least L-1.
inline Complex eta1_closed_form(const BijectiveRecurrenceSpec& spec, const PhiContext& ctx) {
    const long long L = spec.L;
    if (L < 2) throw Error("recurrence needs length >= 2");
    Complex num(0.0, 0.0);
    for (long long r = 0; r + 1 < L; ++r)
        num += eval_unit(spec.c[static_cast<std::size_t>(r)] - spec.c[static_cast<std::size_t>(r + 1)], ctx);
    Complex den = static_cast<double>(L) -
                  eval_unit(spec.c[static_cast<std::size_t>(L - 1)] - spec.c[0], ctx);
    return num / den;
}

/// One application of the coincidence scaling relation
/// eta(L m) = p/L + (L-p)/L eta(m).
inline Complex eta_coincidence_scale(Complex eta_m, long long p, long long L) {
    double pl = static_cast<double>(p) / static_cast<double>(L);
    return pl + (1.0 - pl) * eta_m;
}

// ---------------------------------------------------------------------------
// Spin weight windows

/// Character weights of a window of a legal spin-rule word, computed at
/// the weight level: digits are positional in every substituted image,
/// so the whole window follows the index recursion
/// u[L m + j] = u[m] * chi_n(W[m mod L][j]) without materializing
/// letters. The window matches legal_window seeded by legal_seed_pair.
struct WeightWindow {
    std::vector<Complex> weights;
    long long lo = 0; // coordinate of weights[0]

    bool covers(long long a, long long b) const {
        return lo <= a && b <= lo + static_cast<long long>(weights.size()) - 1;
    }
    Complex at(long long coord) const {
        return weights[static_cast<std::size_t>(coord - lo)];
    }
};

inline WeightWindow spin_weight_window(const SpinRule& rule, long long n, const PhiContext& ctx,
                                       long long need_left, long long need_right) {
    const long long L = rule.digits;
    std::vector<std::vector<Complex>> omega(static_cast<std::size_t>(L));
    for (long long d = 0; d < L; ++d)
        for (long long j = 0; j < L; ++j)
            omega[static_cast<std::size_t>(d)].push_back(eval_unit(n * rule.w[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)], ctx));

    // base level: rho^2(a0) with the origin at the start of the second
    // level-1 block
    SubstitutionRule sub{rule};
    TwoSidedWord base = apply(sub, apply(sub, TwoSidedWord::single(SpinRule::letter(Angle(), 0, L))));
    std::vector<Complex> u0;
    u0.reserve(base.letters.size());
    for (const auto& a : base.letters)
        u0.push_back(eval_unit(n * SpinRule::spin_of(a), ctx));

    // choose the level count so the trimmed window fits
    int K = 0;
    long long origin = L;       // absolute origin index at level K
    long long total = L * L;    // word length at level K
    while (origin < need_left || origin + need_right > total - 1) {
        ++K;
        origin *= L;
        total *= L;
        if (K > 60) throw Error("spin window too large");
    }

    // needed absolute ranges per level, from the top down
    std::vector<std::pair<long long, long long>> range(static_cast<std::size_t>(K) + 1);
    range[static_cast<std::size_t>(K)] = {origin - need_left, origin + need_right};
    for (int k = K; k > 0; --k) {
        auto [a, b] = range[static_cast<std::size_t>(k)];
        range[static_cast<std::size_t>(k - 1)] = {a / L, b / L};
    }

    auto [lo0, hi0] = range[0];
    std::vector<Complex> cur(u0.begin() + lo0, u0.begin() + hi0 + 1);
    long long cur_lo = lo0;
    for (int k = 1; k <= K; ++k) {
        auto [a, b] = range[static_cast<std::size_t>(k)];
        std::vector<Complex> next;
        next.reserve(static_cast<std::size_t>(b - a + 1));
        for (long long i = a; i <= b; ++i) {
            long long m = i / L, j = i % L;
            next.push_back(cur[static_cast<std::size_t>(m - cur_lo)] *
                           omega[static_cast<std::size_t>(m % L)][static_cast<std::size_t>(j)]);
        }
        cur = std::move(next);
        cur_lo = a;
    }
    return {std::move(cur), cur_lo - origin};
}

// ---------------------------------------------------------------------------
// Eta tables

/// Memoized autocorrelation coefficients eta(m) of a character-weighted
/// Dirac comb. Backed by the exact bijective recurrences, by the
/// coincidence scaling relation on top of a base table, or by empirical
/// Birkhoff averaging over a stored weight window.
///
/// eta(0) == 1 by unitarity and eta(-m) == conj(eta(m)) by construction
/// (negative lags reuse the same pair set). Reads are safe to share
/// across threads once the needed lags have been evaluated; population
/// itself is single-threaded.
class EtaTable {
public:
    static EtaTable exact_bijective(BijectiveRecurrenceSpec spec, const PhiContext& ctx) {
        EtaTable t;
        t.kind_ = Kind::ExactBijective;
        t.spec_ = std::move(spec);
        const long long L = t.spec_.L;
        t.A_.assign(static_cast<std::size_t>(L), Complex(0, 0));
        t.B_.assign(static_cast<std::size_t>(L), Complex(0, 0));
        for (long long k = 0; k < L; ++k) {
            for (long long r = 0; r + k < L; ++r)
                t.A_[static_cast<std::size_t>(k)] +=
                    eval_unit(t.spec_.c[static_cast<std::size_t>(r)] - t.spec_.c[static_cast<std::size_t>(r + k)], ctx);
            for (long long r = L - k; r < L; ++r)
                t.B_[static_cast<std::size_t>(k)] +=
                    eval_unit(t.spec_.c[static_cast<std::size_t>(r)] - t.spec_.c[static_cast<std::size_t>(r + k - L)], ctx);
        }
        t.eta1_ = eta1_closed_form(t.spec_, ctx);
        return t;
    }

    static EtaTable empirical(const TwoSidedWord& prefix, const Character& chi, long long N,
                              const PhiContext& ctx) {
        if (!prefix.covers(-N, N)) throw WindowTooSmall("prefix does not cover [-N, N]");
        EtaTable t;
        t.kind_ = Kind::Empirical;
        t.N_ = N;
        t.wlo_ = prefix.lo();
        t.weights_.reserve(prefix.letters.size());
        for (const auto& a : prefix.letters)
            t.weights_.push_back(eval_unit(character_angle(chi, a), ctx));
        return t;
    }

    static EtaTable empirical_weights(WeightWindow w, long long N) {
        if (!w.covers(-N, N)) throw WindowTooSmall("weight window does not cover [-N, N]");
        EtaTable t;
        t.kind_ = Kind::Empirical;
        t.N_ = N;
        t.wlo_ = w.lo;
        t.weights_ = std::move(w.weights);
        return t;
    }

    static EtaTable coincidence_scale(long long p, long long L, EtaTable base) {
        EtaTable t;
        t.kind_ = Kind::CoincidenceScale;
        t.p_ = p;
        t.L_ = L;
        t.base_ = std::make_shared<EtaTable>(std::move(base));
        return t;
    }

    Complex eta(long long m) const {
        if (m == 0) return Complex(1.0, 0.0);
        if (m < 0) return std::conj(eta(-m));
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        Complex v;
        switch (kind_) {
            case Kind::ExactBijective: v = eval_exact(m); break;
            case Kind::Empirical: v = eval_empirical(m); break;
            case Kind::CoincidenceScale:
                v = (m % L_ == 0) ? eta_coincidence_scale(eta(m / L_), p_, L_) : base_->eta(m);
                break;
        }
        memo_.emplace(m, v);
        return v;
    }

    long long empirical_half_width() const { return N_; }

private:
    enum class Kind { ExactBijective, Empirical, CoincidenceScale };

    Complex eval_exact(long long m) const {
        const long long L = spec_.L;
        if (m == 1) return eta1_;
        long long mp = m / L, k = m % L;
        if (k == 0) return eta(mp);
        return (A_[static_cast<std::size_t>(k)] * eta(mp) +
                B_[static_cast<std::size_t>(k)] * eta(mp + 1)) /
               static_cast<double>(L);
    }

    Complex eval_empirical(long long m) const {
        long long last = wlo_ + static_cast<long long>(weights_.size()) - 1;
        if (-N_ < wlo_ || N_ + m > last)
            throw WindowTooSmall("window does not cover [-N, N+m]");
        Complex acc(0.0, 0.0);
        const Complex* base = weights_.data() - wlo_;
        for (long long j = -N_; j <= N_; ++j) acc += base[j] * std::conj(base[j + m]);
        return acc / static_cast<double>(2 * N_ + 1);
    }

    Kind kind_ = Kind::ExactBijective;
    BijectiveRecurrenceSpec spec_;
    std::vector<Complex> A_, B_;
    Complex eta1_{1.0, 0.0};
    std::vector<Complex> weights_;
    long long wlo_ = 0;
    long long N_ = 0;
    long long p_ = 0, L_ = 1;
    std::shared_ptr<const EtaTable> base_;
    mutable std::unordered_map<long long, Complex> memo_;
};

// ---------------------------------------------------------------------------
// Free operations

/// Birkhoff average (1/(2N+1)) sum_{j=-N}^{N} chi(w_j) conj(chi(w_{j+m})).
/// Negative lags reuse the same pair set, so conjugate symmetry is exact.
inline Complex eta_empirical(const TwoSidedWord& prefix, const Character& chi, long long N,
                             long long m, const PhiContext& ctx) {
    if (m == 0) return Complex(1.0, 0.0);
    bool neg = m < 0;
    if (neg) m = -m;
    if (!prefix.covers(-N, N + m)) throw WindowTooSmall("prefix does not cover [-N, N+|m|]");
    Complex acc(0.0, 0.0);
    for (long long j = -N; j <= N; ++j) {
        Complex a = eval_unit(character_angle(chi, prefix.at(j)), ctx);
        Complex b = eval_unit(character_angle(chi, prefix.at(j + m)), ctx);
        acc += a * std::conj(b);
    }
    acc /= static_cast<double>(2 * N + 1);
    return neg ? std::conj(acc) : acc;
}

/// Top-down memoized evaluation of the exact bijective recurrence for a
/// single lag. Loops should construct an EtaTable instead to share the
/// memo across lags.
inline Complex eta_exact_bijective(const BijectiveRecurrenceSpec& spec, long long m,
                                   const PhiContext& ctx) {
    return EtaTable::exact_bijective(spec, ctx).eta(m);
}

// ---------------------------------------------------------------------------
// Almost periods

struct AlmostPeriods {
    std::vector<long long> members;          // P_eps intersected with [-M, M], sorted
    std::optional<long long> max_gap;        // max gap between consecutive members
    double epsilon = 0.0;
    long long M = 0;
};

/// P_eps = { m : |eta(0) - eta(m)|^{1/2} < eps } restricted to [-M, M],
/// together with the relative-denseness statistic.
inline AlmostPeriods almost_period_set(const EtaTable& eta, double epsilon, long long M) {
    AlmostPeriods out;
    out.epsilon = epsilon;
    out.M = M;
    const double thresh = epsilon * epsilon;
    std::vector<long long> pos;
    for (long long m = 1; m <= M; ++m) {
        if (std::abs(1.0 - eta.eta(m)) < thresh) pos.push_back(m);
    }
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.members.push_back(-*it);
    out.members.push_back(0); // |eta(0) - eta(0)| = 0 < eps^2 always
    out.members.insert(out.members.end(), pos.begin(), pos.end());
    if (out.members.size() >= 2) {
        long long g = 0;
        for (std::size_t i = 1; i < out.members.size(); ++i)
            g = std::max(g, out.members[i] - out.members[i - 1]);
        out.max_gap = g;
    }
    return out;
}

} // namespace subspec

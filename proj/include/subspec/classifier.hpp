#pragma once

#include <optional>
#include <string>

#include "subspec/autocorrelation.hpp"
#include "subspec/cyclotomic.hpp"
#include "subspec/substitution.hpp"

namespace subspec {

enum class SpectralKind { PurePoint, PurelySingularContinuous, Lebesgue, Mixed, Unknown };

inline const char* to_string(SpectralKind k) {
    switch (k) {
        case SpectralKind::PurePoint: return "pure_point";
        case SpectralKind::PurelySingularContinuous: return "purely_singular_continuous";
        case SpectralKind::Lebesgue: return "lebesgue";
        case SpectralKind::Mixed: return "mixed";
        case SpectralKind::Unknown: return "unknown";
    }
    return "unknown";
}

/// Finite cyclic rule generating the same character comb as a rule whose
/// character pattern is periodic: [a] -> [a g0][a g0 g] ... [a g0 g^{n-1}][a g0]
/// on the order-n group generated by g. g0 = g^{g0_exponent}.
struct CyclicFactor {
    long long n = 1;
    Angle g0, g;
    long long g0_exponent = 0;

    ConstantLengthGroup rule() const {
        ConstantLengthGroup r;
        r.alphabet = AlphabetDesc::cyclic(n);
        for (long long j = 0; j < n; ++j)
            r.columns.push_back(Column::translation(Letter::cyclic(n, g0_exponent + j)));
        r.columns.push_back(Column::translation(Letter::cyclic(n, g0_exponent)));
        return r;
    }
};

struct Evidence {
    std::string criterion;                 // the exact test that decided the verdict
    std::optional<Complex> eta1;           // numeric eta(1), when the rule has one
    std::optional<CyclicFactor> factor;    // periodic factor (pure-point cyclic route)
    std::optional<long long> coincidences; // number of constant columns
    std::optional<double> contraction;     // (L - p) / L
    std::optional<long long> multiplicity; // Lebesgue multiplicity = digit count
    std::optional<ConstantLengthGroup> delegate_rule; // spin rank-1 factor rule
    std::string note;
};

/// Classification outcome for one character-weighted comb.
struct SpectralVerdict {
    SpectralKind kind = SpectralKind::Unknown;
    bool ac_absent = false;
    Evidence evidence;
};

namespace detail {

/// |eta(1)| = 1 holds exactly iff the column character values follow a
/// geometric pattern: all consecutive differences agree and the first
/// and last columns carry the same value. Tested symbolically on
/// angles, never through floats.
inline bool cyclic_character_pattern(const std::vector<Angle>& a, const PhiContext& ctx) {
    const std::size_t L = a.size();
    if (!equal_in_ctx(a.front(), a.back(), ctx)) return false;
    Angle d0 = a[0] - a[1];
    for (std::size_t j = 1; j + 1 < L; ++j) {
        if (!equal_in_ctx(a[j] - a[j + 1], d0, ctx)) return false;
    }
    return true;
}

} // namespace detail

/// Dichotomy for bijective (all-translation) rules: the weighted comb
/// is either periodic with pure point diffraction or purely singular
/// continuous. The pure-point branch is decided by the exact character
/// pattern and needs no primitivity; the singular-continuous branch is
/// gated on the primitivity probe and degrades to Unknown when the
/// probe fails. Absolutely continuous diffraction is absent either way.
inline SpectralVerdict classify_bijective(const ConstantLengthGroup& rule, const Character& chi,
                                          const PhiContext& ctx, double probe_eps = 0.1,
                                          int probe_depth = 64) {
    if (!rule.all_translations())
        throw HypothesisViolation("translation_columns",
                                  "bijective classification requires translation columns");
    if (rule.length() < 2)
        throw HypothesisViolation("length_at_least_two", "rule length must be at least 2");

    std::vector<Angle> a;
    a.reserve(rule.columns.size());
    for (const auto& col : rule.columns) a.push_back(character_angle(chi, col.letter));

    SpectralVerdict v;
    v.ac_absent = true;
    v.evidence.eta1 = eta1_closed_form(make_bijective_spec(rule, chi), ctx);

    if (detail::cyclic_character_pattern(a, ctx)) {
        auto setup = normalize_pseudo_fixed(rule, identity_letter(rule.alphabet), ctx);
        const auto& cols = setup.base.columns;
        const long long Lp = setup.base.length();
        Angle g = character_angle(chi, cols[static_cast<std::size_t>(setup.shift + 1)].letter);
        auto ord = circle_order(g, ctx);
        if (!ord) {
            // cannot happen when the pattern test fired; kept as an honest out
            v.kind = SpectralKind::Unknown;
            v.evidence.criterion = "cyclic_character_pattern";
            v.evidence.note = "generator order not finite";
            return v;
        }
        CyclicFactor factor;
        factor.n = *ord;
        factor.g = canonical(g, ctx);
        factor.g0 = canonical(character_angle(chi, cols[0].letter), ctx);
        factor.g0_exponent = ((Lp - setup.shift - 1) % factor.n + factor.n) % factor.n;
        v.kind = SpectralKind::PurePoint;
        v.evidence.criterion = "cyclic_character_pattern";
        v.evidence.factor = factor;
        return v;
    }

    auto probe = primitivity_probe(SubstitutionRule(rule), probe_eps, probe_depth, ctx);
    if (!probe.pass) {
        v.kind = SpectralKind::Unknown;
        v.evidence.criterion = "primitivity_probe";
        v.evidence.note = "probe failed" +
                          (probe.uncovered_center ? ": uncovered ball at " + to_string(*probe.uncovered_center)
                                                  : std::string());
        return v;
    }
    v.kind = SpectralKind::PurelySingularContinuous;
    v.evidence.criterion = "eta1_modulus_below_one";
    return v;
}

/// Rules with at least one constant column (and translations elsewhere)
/// have pure point diffraction for every character; the scaling
/// relation contracts eta toward 1 along powers of L.
inline SpectralVerdict classify_coincidence(const ConstantLengthGroup& rule, const Character& chi) {
    (void)chi;
    const long long p = rule.constant_count();
    if (p == 0)
        throw HypothesisViolation("coincidence_column",
                                  "coincidence classification requires a constant column");
    for (const auto& col : rule.columns) {
        if (!col.is_translation() && !col.is_constant())
            throw HypothesisViolation("column_shape", "columns must be translations or constants");
    }
    SpectralVerdict v;
    v.kind = SpectralKind::PurePoint;
    v.ac_absent = true;
    v.evidence.criterion = "coincidence_contraction";
    v.evidence.coincidences = p;
    v.evidence.contraction =
        static_cast<double>(rule.length() - p) / static_cast<double>(rule.length());
    return v;
}

/// Spin trichotomy for the character z -> z^n on the spin component.
/// n = 0 gives the integer comb. Otherwise the rescaled character
/// matrix is tested exactly: row orthogonality (unitary up to 1/sqrt(q))
/// gives Lebesgue diffraction; vanishing 2x2 minors (rank one) reduce to
/// a bijective factor on the circle whose column translations are the
/// diagonal character values; anything else is reported Unknown.
inline SpectralVerdict classify_spin(const std::vector<std::vector<Angle>>& W, long long n,
                                     const PhiContext& ctx) {
    const std::size_t q = W.size();
    if (q < 2) throw HypothesisViolation("spin_size", "spin matrix must be at least 2x2");
    for (const auto& row : W)
        if (row.size() != q) throw HypothesisViolation("spin_size", "spin matrix must be square");

    SpectralVerdict v;
    if (n == 0) {
        v.kind = SpectralKind::PurePoint;
        v.ac_absent = true;
        v.evidence.criterion = "trivial_character";
        v.evidence.note = "weights are constant; the comb is the integer lattice";
        return v;
    }

    bool unitary = true;
    for (std::size_t i1 = 0; i1 < q && unitary; ++i1) {
        for (std::size_t i2 = i1 + 1; i2 < q && unitary; ++i2) {
            std::vector<Angle> terms;
            terms.reserve(q);
            for (std::size_t j = 0; j < q; ++j) terms.push_back(n * (W[i1][j] - W[i2][j]));
            if (exact_sum_is_zero(terms, ctx) != ZeroCheck::Zero) unitary = false;
        }
    }
    if (unitary) {
        v.kind = SpectralKind::Lebesgue;
        v.ac_absent = false;
        v.evidence.criterion = "spin_row_orthogonality";
        v.evidence.multiplicity = static_cast<long long>(q);
        return v;
    }

    bool rank_one = true;
    for (std::size_t i1 = 0; i1 < q && rank_one; ++i1)
        for (std::size_t i2 = i1 + 1; i2 < q && rank_one; ++i2)
            for (std::size_t j1 = 0; j1 < q && rank_one; ++j1)
                for (std::size_t j2 = j1 + 1; j2 < q && rank_one; ++j2)
                    if (!equal_in_ctx(n * (W[i1][j1] + W[i2][j2]), n * (W[i1][j2] + W[i2][j1]), ctx))
                        rank_one = false;
    if (rank_one) {
        ConstantLengthGroup factor;
        factor.alphabet = AlphabetDesc::circle();
        for (std::size_t j = 0; j < q; ++j)
            factor.columns.push_back(Column::translation(Letter::circle(n * W[j][j])));
        SpectralVerdict inner = classify_bijective(factor, Character::circle(1), ctx);
        inner.evidence.criterion = "spin_rank_one_factor:" + inner.evidence.criterion;
        inner.evidence.delegate_rule = factor;
        return inner;
    }

    v.kind = SpectralKind::Unknown;
    v.ac_absent = false;
    v.evidence.criterion = "spin_tests_inconclusive";
    v.evidence.note = "character matrix is neither row-orthogonal nor rank one";
    return v;
}

} // namespace subspec

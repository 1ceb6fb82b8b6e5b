#pragma once

#include <optional>
#include <string>

#include "subspec/substitution.hpp"

namespace subspec {

// Shipped example rules. alpha always denotes the circle element with
// angle phi from the ambient context, written as the formal angle
// Angle(0, 1).

/// [theta] -> [theta] [theta] [theta a] [theta] on the circle.
inline ConstantLengthGroup rho1() {
    ConstantLengthGroup r;
    r.alphabet = AlphabetDesc::circle();
    r.columns = {Column::translation(Letter::circle(Angle())),
                 Column::translation(Letter::circle(Angle())),
                 Column::translation(Letter::circle(Angle(Rational(0), 1))),
                 Column::translation(Letter::circle(Angle()))};
    return r;
}

/// [theta] -> [theta] [1] [theta a] [theta] on the circle (one
/// coincidence).
inline ConstantLengthGroup rho2() {
    ConstantLengthGroup r;
    r.alphabet = AlphabetDesc::circle();
    r.columns = {Column::translation(Letter::circle(Angle())),
                 Column::constant(Letter::circle(Angle())),
                 Column::translation(Letter::circle(Angle(Rational(0), 1))),
                 Column::translation(Letter::circle(Angle()))};
    return r;
}

/// Spin rule on S^1 x {0,1} with spin matrix [[1, -1], [a, a]].
inline SpinRule spin_rule() {
    SpinRule r;
    r.digits = 2;
    r.w = {{Angle(), Angle(Rational(1, 2))},
           {Angle(Rational(0), 1), Angle(Rational(0), 1)}};
    return r;
}

/// The non-constant-length rule on the extended naturals.
inline NonConstantTable extnat_rule() { return NonConstantTable{}; }

/// [a] -> [a g0][a g0 g] ... [a g0 g^{n-1}][a g0] on C_n with g0 = e and
/// g a generator; length n+1.
inline ConstantLengthGroup cyclic_rule(long long n) {
    ConstantLengthGroup r;
    r.alphabet = AlphabetDesc::cyclic(n);
    for (long long j = 0; j < n; ++j) r.columns.push_back(Column::translation(Letter::cyclic(n, j)));
    r.columns.push_back(Column::translation(Letter::cyclic(n, 0)));
    return r;
}

/// [theta] -> [theta b0][theta b1][theta b2] on C_2 x S^1 with
/// b0 = b2 = (e, 1) and b1 = (g, a).
inline ConstantLengthGroup c2xs1() {
    ConstantLengthGroup r;
    r.alphabet = AlphabetDesc::product({AlphabetDesc::cyclic(2), AlphabetDesc::circle()});
    Letter e1 = Letter::product({Letter::cyclic(2, 0), Letter::circle(Angle())});
    Letter ga = Letter::product({Letter::cyclic(2, 1), Letter::circle(Angle(Rational(0), 1))});
    r.columns = {Column::translation(e1), Column::translation(ga), Column::translation(e1)};
    return r;
}

struct Builtin {
    std::string name;
    SubstitutionRule rule;
    std::string display; // the rule as conventionally written
};

/// Resolve a builtin by name; cyclic rules are requested as
/// "cyclic(n)".
inline std::optional<Builtin> builtin_rule(const std::string& name) {
    if (name == "rho1")
        return Builtin{name, SubstitutionRule(rho1()),
                       u8"[θ] ↦ [θ] [θ] [θα] [θ]"};
    if (name == "rho2")
        return Builtin{name, SubstitutionRule(rho2()),
                       u8"[θ] ↦ [θ] [1] [θα] [θ]"};
    if (name == "spin")
        return Builtin{name, SubstitutionRule(spin_rule()),
                       u8"(θ,0) ↦ (θ,0) (−θ,1)\n(θ,1) ↦ (θα,0) (θα,1)"};
    if (name == "extnat")
        return Builtin{name, SubstitutionRule(extnat_rule()),
                       u8"[0] ↦ [0][1]\n[n] ↦ [0][n+1][n−1]\n[∞] ↦ [0][∞][∞]"};
    if (name == "c2xs1")
        return Builtin{name, SubstitutionRule(c2xs1()),
                       u8"[θ] ↦ [θβ₀] [θβ₁] [θβ₂],  β₀ = β₂ = (e,1), β₁ = (g,α)"};
    if (name.rfind("cyclic(", 0) == 0 && name.back() == ')') {
        try {
            long long n = std::stoll(name.substr(7, name.size() - 8));
            if (n < 1) return std::nullopt;
            return Builtin{name, SubstitutionRule(cyclic_rule(n)),
                           u8"[a] ↦ [ag₀] [ag₀g] ⋯ [ag₀g^{n−1}] [ag₀],  g₀ = e, g generator of C_" +
                               std::to_string(n)};
        } catch (...) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

/// Default character for the alphabet of a rule: index n on cyclic or
/// circle components; spin rules weight the spin只 component.
inline Character default_character(const SubstitutionRule& rule, long long n) {
    AlphabetDesc alpha = rule.alphabet();
    if (std::holds_alternative<SpinRule>(rule.v))
        return Character::product({Character::circle(n), Character::trivial()});
    if (std::holds_alternative<CyclicAlpha>(alpha.v)) return Character::cyclic(n);
    if (std::holds_alternative<CircleAlpha>(alpha.v)) return Character::circle(n);
    throw Error("no default character for this alphabet");
}

} // namespace subspec

#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "subspec/angle.hpp"
#include "subspec/cyclotomic.hpp"
#include "subspec/errors.hpp"

namespace subspec {

// ---------------------------------------------------------------------------
// Letters

struct Letter;

/// Element of a finite cyclic group C_n, residue in [0, n).
struct CyclicLetter {
    long long modulus = 1;
    long long residue = 0;
};

/// Element of the circle subgroup {q + k*phi mod 1}.
struct CircleLetter {
    Angle angle;
};

/// Element of N_0 together with the compactification point (value < 0
/// encodes infinity). Carries no group structure.
struct ExtNatLetter {
    long long value = 0; // -1 == infinity
    bool is_infinity() const { return value < 0; }
    static ExtNatLetter infinity() { return ExtNatLetter{-1}; }
};

/// Element of a finite product of alphabets.
struct ProductLetter {
    std::vector<Letter> parts;
};

struct Letter {
    std::variant<CyclicLetter, CircleLetter, ExtNatLetter, ProductLetter> v;

    Letter() : v(CircleLetter{}) {}
    Letter(CyclicLetter c) : v(c) {}
    Letter(CircleLetter c) : v(c) {}
    Letter(ExtNatLetter c) : v(c) {}
    Letter(ProductLetter c) : v(std::move(c)) {}

    static Letter cyclic(long long n, long long r) {
        long long m = r % n;
        if (m < 0) m += n;
        return Letter(CyclicLetter{n, m});
    }
    static Letter circle(Angle a) { return Letter(CircleLetter{a}); }
    static Letter extnat(long long n) { return Letter(ExtNatLetter{n}); }
    static Letter extnat_infinity() { return Letter(ExtNatLetter::infinity()); }
    static Letter product(std::vector<Letter> parts) { return Letter(ProductLetter{std::move(parts)}); }
};

// ---------------------------------------------------------------------------
// Alphabet descriptors

struct AlphabetDesc;

struct CyclicAlpha { long long modulus = 1; };
struct CircleAlpha {};
struct ExtNatAlpha {};
struct ProductAlpha { std::vector<AlphabetDesc> parts; };

struct AlphabetDesc {
    std::variant<CyclicAlpha, CircleAlpha, ExtNatAlpha, ProductAlpha> v;

    static AlphabetDesc cyclic(long long n) { return {CyclicAlpha{n}}; }
    static AlphabetDesc circle() { return {CircleAlpha{}}; }
    static AlphabetDesc extnat() { return {ExtNatAlpha{}}; }
    static AlphabetDesc product(std::vector<AlphabetDesc> parts) {
        return {ProductAlpha{std::move(parts)}};
    }
};

inline bool same_alphabet(const AlphabetDesc& a, const AlphabetDesc& b) {
    if (a.v.index() != b.v.index()) return false;
    if (const auto* ca = std::get_if<CyclicAlpha>(&a.v))
        return ca->modulus == std::get<CyclicAlpha>(b.v).modulus;
    if (const auto* pa = std::get_if<ProductAlpha>(&a.v)) {
        const auto& pb = std::get<ProductAlpha>(b.v);
        if (pa->parts.size() != pb.parts.size()) return false;
        for (std::size_t i = 0; i < pa->parts.size(); ++i)
            if (!same_alphabet(pa->parts[i], pb.parts[i])) return false;
        return true;
    }
    return true;
}

inline AlphabetDesc alphabet_of(const Letter& a) {
    if (const auto* c = std::get_if<CyclicLetter>(&a.v)) return AlphabetDesc::cyclic(c->modulus);
    if (std::holds_alternative<CircleLetter>(a.v)) return AlphabetDesc::circle();
    if (std::holds_alternative<ExtNatLetter>(a.v)) return AlphabetDesc::extnat();
    const auto& p = std::get<ProductLetter>(a.v);
    std::vector<AlphabetDesc> parts;
    parts.reserve(p.parts.size());
    for (const auto& x : p.parts) parts.push_back(alphabet_of(x));
    return AlphabetDesc::product(std::move(parts));
}

/// Identity element of the given (group) alphabet.
inline Letter identity_letter(const AlphabetDesc& d) {
    if (const auto* c = std::get_if<CyclicAlpha>(&d.v)) return Letter::cyclic(c->modulus, 0);
    if (std::holds_alternative<CircleAlpha>(d.v)) return Letter::circle(Angle());
    if (std::holds_alternative<ExtNatAlpha>(d.v)) throw NotAGroup();
    const auto& p = std::get<ProductAlpha>(d.v);
    std::vector<Letter> parts;
    parts.reserve(p.parts.size());
    for (const auto& x : p.parts) parts.push_back(identity_letter(x));
    return Letter::product(std::move(parts));
}

// ---------------------------------------------------------------------------
// Group operations

/// Exact group product. Rejects extended-natural letters (no group
/// structure) and letters from different alphabets.
inline Letter compose(const Letter& a, const Letter& b) {
    if (a.v.index() != b.v.index()) throw AlphabetMismatch();
    if (const auto* ca = std::get_if<CyclicLetter>(&a.v)) {
        const auto& cb = std::get<CyclicLetter>(b.v);
        if (ca->modulus != cb.modulus) throw AlphabetMismatch();
        return Letter::cyclic(ca->modulus, ca->residue + cb.residue);
    }
    if (const auto* ca = std::get_if<CircleLetter>(&a.v)) {
        return Letter::circle(ca->angle + std::get<CircleLetter>(b.v).angle);
    }
    if (std::holds_alternative<ExtNatLetter>(a.v)) throw NotAGroup();
    const auto& pa = std::get<ProductLetter>(a.v);
    const auto& pb = std::get<ProductLetter>(b.v);
    if (pa.parts.size() != pb.parts.size()) throw AlphabetMismatch();
    std::vector<Letter> parts;
    parts.reserve(pa.parts.size());
    for (std::size_t i = 0; i < pa.parts.size(); ++i)
        parts.push_back(compose(pa.parts[i], pb.parts[i]));
    return Letter::product(std::move(parts));
}

inline Letter inverse(const Letter& a) {
    if (const auto* c = std::get_if<CyclicLetter>(&a.v))
        return Letter::cyclic(c->modulus, -c->residue);
    if (const auto* c = std::get_if<CircleLetter>(&a.v))
        return Letter::circle(-c->angle);
    if (std::holds_alternative<ExtNatLetter>(a.v)) throw NotAGroup();
    const auto& p = std::get<ProductLetter>(a.v);
    std::vector<Letter> parts;
    parts.reserve(p.parts.size());
    for (const auto& x : p.parts) parts.push_back(inverse(x));
    return Letter::product(std::move(parts));
}

/// Fold rational-phi angles so structurally different representations
/// of the same letter compare equal under the context.
inline Letter canonical(const Letter& a, const PhiContext& ctx) {
    if (const auto* c = std::get_if<CircleLetter>(&a.v))
        return Letter::circle(canonical(c->angle, ctx));
    if (const auto* p = std::get_if<ProductLetter>(&a.v)) {
        std::vector<Letter> parts;
        parts.reserve(p->parts.size());
        for (const auto& x : p->parts) parts.push_back(canonical(x, ctx));
        return Letter::product(std::move(parts));
    }
    return a;
}

inline bool letters_equal(const Letter& a, const Letter& b) {
    if (a.v.index() != b.v.index()) return false;
    if (const auto* ca = std::get_if<CyclicLetter>(&a.v)) {
        const auto& cb = std::get<CyclicLetter>(b.v);
        return ca->modulus == cb.modulus && ca->residue == cb.residue;
    }
    if (const auto* ca = std::get_if<CircleLetter>(&a.v))
        return ca->angle == std::get<CircleLetter>(b.v).angle;
    if (const auto* ca = std::get_if<ExtNatLetter>(&a.v))
        return ca->value == std::get<ExtNatLetter>(b.v).value;
    const auto& pa = std::get<ProductLetter>(a.v);
    const auto& pb = std::get<ProductLetter>(b.v);
    if (pa.parts.size() != pb.parts.size()) return false;
    for (std::size_t i = 0; i < pa.parts.size(); ++i)
        if (!letters_equal(pa.parts[i], pb.parts[i])) return false;
    return true;
}

inline bool letters_equal(const Letter& a, const Letter& b, const PhiContext& ctx) {
    return letters_equal(canonical(a, ctx), canonical(b, ctx));
}

/// Strict weak order for deduplication sets.
inline bool letters_less(const Letter& a, const Letter& b) {
    if (a.v.index() != b.v.index()) return a.v.index() < b.v.index();
    if (const auto* ca = std::get_if<CyclicLetter>(&a.v)) {
        const auto& cb = std::get<CyclicLetter>(b.v);
        if (ca->modulus != cb.modulus) return ca->modulus < cb.modulus;
        return ca->residue < cb.residue;
    }
    if (const auto* ca = std::get_if<CircleLetter>(&a.v)) {
        const auto& ab = std::get<CircleLetter>(b.v).angle;
        if (ca->angle == ab) return false;
        return ca->angle < ab;
    }
    if (const auto* ca = std::get_if<ExtNatLetter>(&a.v))
        return ca->value < std::get<ExtNatLetter>(b.v).value;
    const auto& pa = std::get<ProductLetter>(a.v);
    const auto& pb = std::get<ProductLetter>(b.v);
    if (pa.parts.size() != pb.parts.size()) return pa.parts.size() < pb.parts.size();
    for (std::size_t i = 0; i < pa.parts.size(); ++i) {
        if (letters_less(pa.parts[i], pb.parts[i])) return true;
        if (letters_less(pb.parts[i], pa.parts[i])) return false;
    }
    return false;
}

inline std::string to_string(const Letter& a) {
    if (const auto* c = std::get_if<CyclicLetter>(&a.v))
        return std::to_string(c->residue);
    if (const auto* c = std::get_if<CircleLetter>(&a.v))
        return to_string(c->angle);
    if (const auto* c = std::get_if<ExtNatLetter>(&a.v))
        return c->is_infinity() ? "inf" : std::to_string(c->value);
    const auto& p = std::get<ProductLetter>(a.v);
    std::string s = "(";
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) s += ",";
        s += to_string(p.parts[i]);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Characters

struct Character;

struct TrivialChar {};
struct CyclicChar { long long index = 0; };             // chi(r) = e^{2 pi i index r / n}
struct CircleChar { long long n = 0; };                 // chi_n(z) = z^n
struct ProductChar { std::vector<Character> parts; };

struct Character {
    std::variant<TrivialChar, CyclicChar, CircleChar, ProductChar> v;

    Character() : v(TrivialChar{}) {}
    Character(TrivialChar c) : v(c) {}
    Character(CyclicChar c) : v(c) {}
    Character(CircleChar c) : v(c) {}
    Character(ProductChar c) : v(std::move(c)) {}

    static Character trivial() { return Character(TrivialChar{}); }
    static Character cyclic(long long index) { return Character(CyclicChar{index}); }
    static Character circle(long long n) { return Character(CircleChar{n}); }
    static Character product(std::vector<Character> parts) {
        return Character(ProductChar{std::move(parts)});
    }
};

/// Angle t with chi(a) = e^{2 pi i t}; a group homomorphism at the
/// Angle level, so character_angle(a.b) = character_angle(a) +
/// character_angle(b) exactly.
inline Angle character_angle(const Character& chi, const Letter& a) {
    if (std::holds_alternative<TrivialChar>(chi.v)) return Angle();
    if (const auto* cc = std::get_if<CyclicChar>(&chi.v)) {
        const auto* cl = std::get_if<CyclicLetter>(&a.v);
        if (!cl) throw AlphabetMismatch("cyclic character applied to non-cyclic letter");
        return Angle(Rational(cc->index * cl->residue, cl->modulus));
    }
    if (const auto* cc = std::get_if<CircleChar>(&chi.v)) {
        const auto* cl = std::get_if<CircleLetter>(&a.v);
        if (!cl) throw AlphabetMismatch("circle character applied to non-circle letter");
        return cc->n * cl->angle;
    }
    const auto& pc = std::get<ProductChar>(chi.v);
    const auto* pl = std::get_if<ProductLetter>(&a.v);
    if (!pl || pl->parts.size() != pc.parts.size())
        throw AlphabetMismatch("product character applied to incompatible letter");
    Angle t;
    for (std::size_t i = 0; i < pc.parts.size(); ++i)
        t = t + character_angle(pc.parts[i], pl->parts[i]);
    return t;
}

/// chi(a) as a unit complex at the context's precision.
inline std::complex<double> character_value(const Character& chi, const Letter& a,
                                            const PhiContext& ctx) {
    return eval_unit(character_angle(chi, a), ctx);
}

inline std::string to_string(const Character& chi) {
    if (std::holds_alternative<TrivialChar>(chi.v)) return "1";
    if (const auto* c = std::get_if<CyclicChar>(&chi.v)) return "chi_" + std::to_string(c->index);
    if (const auto* c = std::get_if<CircleChar>(&chi.v)) return "chi_" + std::to_string(c->n);
    const auto& p = std::get<ProductChar>(chi.v);
    std::string s;
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) s += "x";
        s += to_string(p.parts[i]);
    }
    return s;
}

} // namespace subspec

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "subspec/alphabet.hpp"

namespace subspec {

// ---------------------------------------------------------------------------
// Rules

/// One image position of a constant-length rule: either a group
/// translation theta -> theta*b or a constant (coincidence).
struct Column {
    enum class Kind { Translation, Constant } kind = Kind::Translation;
    Letter letter;

    static Column translation(Letter b) { return {Kind::Translation, std::move(b)}; }
    static Column constant(Letter c) { return {Kind::Constant, std::move(c)}; }
    bool is_translation() const { return kind == Kind::Translation; }
    bool is_constant() const { return kind == Kind::Constant; }

    Letter apply(const Letter& a) const {
        return is_constant() ? letter : compose(a, letter);
    }
};

/// Constant-length rule on a compact abelian group alphabet, one column
/// per image position.
struct ConstantLengthGroup {
    AlphabetDesc alphabet;
    std::vector<Column> columns;

    long long length() const { return static_cast<long long>(columns.size()); }
    long long constant_count() const {
        long long p = 0;
        for (const auto& c : columns) p += c.is_constant();
        return p;
    }
    bool all_translations() const { return constant_count() == 0; }
};

/// Spin rule on S^1 x {0,...,digits-1}: the image of (theta, d) has the
/// letter (theta * W[d][j], j) at position j.
struct SpinRule {
    long long digits = 2;
    std::vector<std::vector<Angle>> w; // digits x digits spin matrix

    AlphabetDesc alphabet() const {
        return AlphabetDesc::product({AlphabetDesc::circle(), AlphabetDesc::cyclic(digits)});
    }
    static Letter letter(Angle spin, long long digit, long long digits) {
        return Letter::product({Letter::circle(spin), Letter::cyclic(digits, digit)});
    }
    static Angle spin_of(const Letter& a) {
        return std::get<CircleLetter>(std::get<ProductLetter>(a.v).parts[0].v).angle;
    }
    static long long digit_of(const Letter& a) {
        return std::get<CyclicLetter>(std::get<ProductLetter>(a.v).parts[1].v).residue;
    }
};

/// The non-constant-length table on the extended naturals:
///   0 -> 0 1,   n -> 0 n+1 n-1,   inf -> 0 inf inf.
struct NonConstantTable {
    AlphabetDesc alphabet() const { return AlphabetDesc::extnat(); }
};

struct SubstitutionRule {
    std::variant<ConstantLengthGroup, SpinRule, NonConstantTable> v;

    SubstitutionRule(ConstantLengthGroup r) : v(std::move(r)) {}
    SubstitutionRule(SpinRule r) : v(std::move(r)) {}
    SubstitutionRule(NonConstantTable r) : v(r) {}

    AlphabetDesc alphabet() const {
        if (const auto* c = std::get_if<ConstantLengthGroup>(&v)) return c->alphabet;
        if (const auto* s = std::get_if<SpinRule>(&v)) return s->alphabet();
        return std::get<NonConstantTable>(v).alphabet();
    }
    /// Constant length if the rule has one.
    std::optional<long long> constant_length() const {
        if (const auto* c = std::get_if<ConstantLengthGroup>(&v)) return c->length();
        if (const auto* s = std::get_if<SpinRule>(&v)) return s->digits;
        return std::nullopt;
    }
};

/// Image word of a single letter.
inline std::vector<Letter> image_of(const SubstitutionRule& rule, const Letter& a) {
    if (const auto* r = std::get_if<ConstantLengthGroup>(&rule.v)) {
        if (!same_alphabet(alphabet_of(a), r->alphabet)) throw AlphabetMismatch();
        std::vector<Letter> out;
        out.reserve(r->columns.size());
        for (const auto& col : r->columns) out.push_back(col.apply(a));
        return out;
    }
    if (const auto* r = std::get_if<SpinRule>(&rule.v)) {
        if (!same_alphabet(alphabet_of(a), r->alphabet())) throw AlphabetMismatch();
        Angle spin = SpinRule::spin_of(a);
        long long d = SpinRule::digit_of(a);
        std::vector<Letter> out;
        out.reserve(static_cast<std::size_t>(r->digits));
        for (long long j = 0; j < r->digits; ++j)
            out.push_back(SpinRule::letter(spin + r->w[d][j], j, r->digits));
        return out;
    }
    const auto* n = std::get_if<ExtNatLetter>(&a.v);
    if (!n) throw AlphabetMismatch();
    if (n->is_infinity())
        return {Letter::extnat(0), Letter::extnat_infinity(), Letter::extnat_infinity()};
    if (n->value == 0) return {Letter::extnat(0), Letter::extnat(1)};
    return {Letter::extnat(0), Letter::extnat(n->value + 1), Letter::extnat(n->value - 1)};
}

// ---------------------------------------------------------------------------
// Two-sided words

/// A finite window of a bi-infinite word. letters[origin_index] sits at
/// coordinate 0; the letter at index i has coordinate i - origin_index.
struct TwoSidedWord {
    std::vector<Letter> letters;
    long long origin_index = 0;

    static TwoSidedWord single(Letter a) { return {{std::move(a)}, 0}; }

    long long lo() const { return -origin_index; }
    long long hi() const { return static_cast<long long>(letters.size()) - 1 - origin_index; }
    long long size() const { return static_cast<long long>(letters.size()); }
    bool covers(long long a, long long b) const { return lo() <= a && b <= hi(); }

    const Letter& at(long long coord) const {
        long long i = coord + origin_index;
        if (i < 0 || i >= size()) throw WindowTooSmall("coordinate outside generated window");
        return letters[static_cast<std::size_t>(i)];
    }
};

/// Substitution action on words: images are concatenated and the image
/// of the coordinate-0 letter starts at coordinate 0.
inline TwoSidedWord apply(const SubstitutionRule& rule, const TwoSidedWord& w) {
    TwoSidedWord out;
    long long left_len = 0;
    for (long long i = 0; i < w.size(); ++i) {
        auto img = image_of(rule, w.letters[static_cast<std::size_t>(i)]);
        if (i < w.origin_index) left_len += static_cast<long long>(img.size());
        out.letters.insert(out.letters.end(), img.begin(), img.end());
    }
    out.origin_index = left_len;
    return out;
}

namespace detail {

inline long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

/// Constant-length application with the image of coordinate c placed at
/// [L*c - shift, L*c + L-1 - shift], restricted to [lo, hi]. Keeping the
/// restriction here bounds memory when growing large windows.
inline TwoSidedWord apply_shifted_window(const SubstitutionRule& rule, const TwoSidedWord& w,
                                         long long shift, long long lo, long long hi) {
    long long L = *rule.constant_length();
    long long c_min = std::max(w.lo(), floor_div(lo + shift, L));
    long long c_max = std::min(w.hi(), floor_div(hi + shift, L));
    TwoSidedWord out;
    out.letters.reserve(static_cast<std::size_t>((c_max - c_min + 1) * L));
    long long first_coord = 0;
    bool first = true;
    for (long long c = c_min; c <= c_max; ++c) {
        auto img = image_of(rule, w.at(c));
        for (long long j = 0; j < L; ++j) {
            long long coord = L * c + j - shift;
            if (coord < lo || coord > hi) continue;
            if (first) { first_coord = coord; first = false; }
            out.letters.push_back(std::move(img[static_cast<std::size_t>(j)]));
        }
    }
    out.origin_index = -first_coord;
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Pseudo-fixed points

/// Normalized rule together with the internal position that holds a
/// fixed letter: iterating w -> shift(base(w), -shift) from the seed
/// letter grows a stable two-sided window.
struct PseudoFixedSetup {
    ConstantLengthGroup base;
    long long shift = 1;
    Letter seed;
    long long power = 1; // base == (input rule)^power, possibly renormalized
};

namespace detail {

inline Column compose_columns(const Column& outer, const Column& inner) {
    if (outer.is_constant()) return outer;
    if (inner.is_constant()) return Column::constant(compose(inner.letter, outer.letter));
    return Column::translation(compose(inner.letter, outer.letter));
}

inline ConstantLengthGroup rule_power(const ConstantLengthGroup& rule, long long m) {
    ConstantLengthGroup acc = rule;
    for (long long step = 1; step < m; ++step) {
        // acc = rule^step; build rule^{step+1} = acc o rule
        ConstantLengthGroup next;
        next.alphabet = rule.alphabet;
        next.columns.reserve(rule.columns.size() * acc.columns.size());
        for (const auto& inner : rule.columns)
            for (const auto& outer : acc.columns)
                next.columns.push_back(compose_columns(outer, inner));
        acc = std::move(next);
    }
    return acc;
}

} // namespace detail

/// Find a power and an internal position that anchor a pseudo-fixed
/// point. For translation rules the columns of the power are multiplied
/// by the inverse of the chosen column so it becomes the identity (a
/// column that is already the identity is preferred and left as is).
/// For rules with coincidences the minimal internal constant position
/// is used unchanged and the constant overrides the seed.
inline PseudoFixedSetup normalize_pseudo_fixed(const ConstantLengthGroup& rule, const Letter& seed,
                                               const PhiContext& ctx = PhiContext::irrational(0.5)) {
    for (const auto& col : rule.columns) {
        if (!same_alphabet(alphabet_of(col.letter), rule.alphabet))
            throw AlphabetMismatch("column letter outside the rule alphabet");
    }
    const bool has_constant = rule.constant_count() > 0;
    Letter id = identity_letter(rule.alphabet);
    for (long long m = 1; m <= 4; ++m) {
        ConstantLengthGroup powered = detail::rule_power(rule, m);
        long long L = powered.length();
        if (L < 3) continue;
        if (has_constant) {
            for (long long s = 1; s <= L - 2; ++s) {
                if (powered.columns[static_cast<std::size_t>(s)].is_constant()) {
                    Letter anchor = powered.columns[static_cast<std::size_t>(s)].letter;
                    return {std::move(powered), s, std::move(anchor), m};
                }
            }
            continue; // no internal coincidence at this power; raise it
        }
        long long s = 1;
        for (long long j = 1; j <= L - 2; ++j) {
            if (letters_equal(powered.columns[static_cast<std::size_t>(j)].letter, id, ctx)) {
                s = j;
                break;
            }
        }
        Letter inv = inverse(powered.columns[static_cast<std::size_t>(s)].letter);
        for (auto& col : powered.columns)
            if (col.is_translation()) col.letter = compose(col.letter, inv);
        return {std::move(powered), s, seed, m};
    }
    throw NoInternalColumn();
}

/// Window [lo, hi] of the pseudo-fixed word, grown by the nested
/// iteration and verified stable by one extra application.
inline TwoSidedWord pseudo_fixed_window(const PseudoFixedSetup& setup, long long lo, long long hi) {
    if (lo > 0 || hi < 0) throw Error("window must contain the origin");
    SubstitutionRule rule(setup.base);
    TwoSidedWord w = TwoSidedWord::single(setup.seed);
    if (!(lo == 0 && hi == 0)) {
        for (int iter = 0; iter < 128 && !w.covers(lo, hi); ++iter)
            w = detail::apply_shifted_window(rule, w, setup.shift, lo, hi);
    }
    if (!w.covers(lo, hi)) throw NotNested("window failed to grow; invalid setup");
    TwoSidedWord check = detail::apply_shifted_window(rule, w, setup.shift, lo, hi);
    for (long long c = lo; c <= hi; ++c) {
        if (!letters_equal(w.at(c), check.at(c)))
            throw NotNested("window not stable under one more application");
    }
    return w;
}

inline TwoSidedWord pseudo_fixed_prefix(const PseudoFixedSetup& setup, long long radius) {
    return pseudo_fixed_window(setup, -radius, radius);
}

/// A legal window grown from a legal two-letter seed u|v by plain
/// substitution, trimmed to [-need_left, need_right]. Used for rules
/// without a pseudo-fixed point (for example spin rules).
inline TwoSidedWord legal_window(const SubstitutionRule& rule, const Letter& left,
                                 const Letter& right, long long need_left, long long need_right) {
    TwoSidedWord w;
    w.letters = {left, right};
    w.origin_index = 1;
    for (int iter = 0; iter < 128 && !w.covers(-need_left, need_right); ++iter)
        w = detail::apply_shifted_window(rule, w, 0, -need_left, need_right);
    if (!w.covers(-need_left, need_right))
        throw Error("legal window failed to reach the requested size");
    return w;
}

/// A legal adjacent pair straddling an image boundary of rho^2(a), with
/// the left letter ending a level-1 image. Any such pair seeds
/// legal_window.
inline std::pair<Letter, Letter> legal_seed_pair(const SubstitutionRule& rule, const Letter& a) {
    auto w1 = image_of(rule, a);
    auto left_img = image_of(rule, w1[0]);
    auto right_img = image_of(rule, w1[1]);
    return {left_img.back(), right_img.front()};
}

// ---------------------------------------------------------------------------
// Combinatorial probes

struct ProbeResult {
    bool pass = false;
    // witness of failure: net letter whose orbit missed a ball, and the
    // ball's center
    std::optional<Letter> start;
    std::optional<Letter> uncovered_center;
};

namespace detail {

inline double letter_distance(const Letter& a, const Letter& b, const PhiContext& ctx) {
    if (a.v.index() != b.v.index()) return 1.0;
    if (const auto* ca = std::get_if<CyclicLetter>(&a.v)) {
        const auto& cb = std::get<CyclicLetter>(b.v);
        return (ca->modulus == cb.modulus && ca->residue == cb.residue) ? 0.0 : 1.0;
    }
    if (const auto* ca = std::get_if<CircleLetter>(&a.v)) {
        double va = to_double(ca->angle.q) + static_cast<double>(ca->angle.k) * ctx.phi;
        const auto& ab = std::get<CircleLetter>(b.v).angle;
        double vb = to_double(ab.q) + static_cast<double>(ab.k) * ctx.phi;
        double d = std::fabs(va - vb);
        d -= std::floor(d);
        return std::min(d, 1.0 - d);
    }
    if (const auto* ca = std::get_if<ExtNatLetter>(&a.v)) {
        const auto& cb = std::get<ExtNatLetter>(b.v);
        auto val = [](const ExtNatLetter& x) {
            return x.is_infinity() ? 0.0 : std::pow(2.0, -static_cast<double>(x.value));
        };
        return std::fabs(val(*ca) - val(cb));
    }
    const auto& pa = std::get<ProductLetter>(a.v);
    const auto& pb = std::get<ProductLetter>(b.v);
    double d = 0.0;
    for (std::size_t i = 0; i < pa.parts.size(); ++i)
        d = std::max(d, letter_distance(pa.parts[i], pb.parts[i], ctx));
    return d;
}

inline std::vector<Letter> epsilon_net(const AlphabetDesc& alpha, double eps) {
    if (const auto* c = std::get_if<CyclicAlpha>(&alpha.v)) {
        std::vector<Letter> net;
        for (long long r = 0; r < c->modulus; ++r) net.push_back(Letter::cyclic(c->modulus, r));
        return net;
    }
    if (std::holds_alternative<CircleAlpha>(alpha.v)) {
        long long g = std::max<long long>(2, static_cast<long long>(std::ceil(1.0 / eps)));
        std::vector<Letter> net;
        for (long long j = 0; j < g; ++j) net.push_back(Letter::circle(Angle(Rational(j, g))));
        return net;
    }
    if (std::holds_alternative<ExtNatAlpha>(alpha.v)) {
        long long cap = std::max<long long>(10, static_cast<long long>(std::ceil(std::log2(1.0 / eps))) + 1);
        std::vector<Letter> net;
        for (long long n = 0; n <= cap; ++n) net.push_back(Letter::extnat(n));
        net.push_back(Letter::extnat_infinity());
        return net;
    }
    const auto& p = std::get<ProductAlpha>(alpha.v);
    std::vector<std::vector<Letter>> factors;
    for (const auto& f : p.parts) factors.push_back(epsilon_net(f, eps));
    std::vector<Letter> net = {Letter::product({})};
    for (const auto& f : factors) {
        std::vector<Letter> next;
        next.reserve(net.size() * f.size());
        for (const auto& base : net)
            for (const auto& x : f) {
                auto parts = std::get<ProductLetter>(base.v).parts;
                parts.push_back(x);
                next.push_back(Letter::product(std::move(parts)));
            }
        net = std::move(next);
    }
    return net;
}

} // namespace detail

/// Evidence-grade primitivity check: every epsilon-ball around the net
/// must be met by the letter set of rho^p(a) for some p <= depth, for
/// every net letter a. Letter sets are deduplicated per level, which
/// keeps them small for the rules treated here.
inline ProbeResult primitivity_probe(const SubstitutionRule& rule, double eps, int depth,
                                     const PhiContext& ctx) {
    auto net = detail::epsilon_net(rule.alphabet(), eps);
    auto cmp = [](const Letter& a, const Letter& b) { return letters_less(a, b); };
    for (const auto& start : net) {
        std::set<Letter, decltype(cmp)> level(cmp);
        level.insert(canonical(start, ctx));
        bool covered = false;
        for (int p = 1; p <= depth && !covered; ++p) {
            std::set<Letter, decltype(cmp)> next(cmp);
            for (const auto& a : level)
                for (const auto& b : image_of(rule, a)) next.insert(canonical(b, ctx));
            level = std::move(next);
            if (level.size() > 200000) break; // probe is evidence only; give up
            covered = true;
            for (const auto& center : net) {
                bool hit = false;
                for (const auto& a : level) {
                    if (detail::letter_distance(a, center, ctx) < eps) { hit = true; break; }
                }
                if (!hit) { covered = false; break; }
            }
        }
        if (!covered) {
            // rerun the last level to report an uncovered ball
            for (const auto& center : net) {
                bool hit = false;
                for (const auto& a : level) {
                    if (detail::letter_distance(a, center, ctx) < eps) { hit = true; break; }
                }
                if (!hit) return {false, start, center};
            }
            return {false, start, std::nullopt};
        }
    }
    return {true, std::nullopt, std::nullopt};
}

/// Smallest p with w_{i+p} = w_i across the whole window, scanning up
/// to a quarter of the window length; nullopt if none.
inline std::optional<long long> detect_period(const TwoSidedWord& w,
                                              const PhiContext& ctx = PhiContext::irrational(0.5)) {
    long long len = w.size();
    for (long long p = 1; p <= len / 4; ++p) {
        bool ok = true;
        for (long long i = 0; i + p < len; ++i) {
            if (!letters_equal(w.letters[static_cast<std::size_t>(i)],
                               w.letters[static_cast<std::size_t>(i + p)], ctx)) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

} // namespace subspec

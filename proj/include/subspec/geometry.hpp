#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "subspec/dyadic.hpp"
#include "subspec/errors.hpp"
#include "subspec/rational.hpp"

namespace subspec {

// The non-constant-length rule on N_0 U {inf}:
//   0 -> 0 1,   n -> 0 n+1 n-1,   inf -> 0 inf inf
// with labels encoded as integers and -1 standing for infinity. The
// operator M, its Perron eigendata and the geometric realisation below
// are all specific to this rule.

inline constexpr long long kInfLabel = -1;

/// Natural tile length, exactly: ell(n) = 2 - 2^{-n}, ell(inf) = 2.
inline Dyadic natural_length(long long label) {
    if (label == kInfLabel) return Dyadic(2);
    if (label < 0 || label > 60) throw Error("label out of dyadic range");
    return Dyadic((2LL << label) - 1, static_cast<int>(label));
}

// ---------------------------------------------------------------------------
// The operator M on truncated functions

/// Function on {0,...,cap} together with a value at infinity. The value
/// type is a template parameter so the eigen-identity can be audited in
/// exact arithmetic while the solver runs on doubles.
template <class T>
struct TruncatedFunction {
    std::vector<T> values; // index 0..cap
    T at_inf{};

    long long cap() const { return static_cast<long long>(values.size()) - 1; }
    static TruncatedFunction constant(long long cap, T v) {
        TruncatedFunction f;
        f.values.assign(static_cast<std::size_t>(cap) + 1, v);
        f.at_inf = v;
        return f;
    }
    T& operator()(long long n) { return values[static_cast<std::size_t>(n)]; }
    const T& operator()(long long n) const { return values[static_cast<std::size_t>(n)]; }
};

/// Mf(a) = sum over the letters b of the image of a of f(b), with the
/// truncation cap+1 -> inf.
template <class T>
TruncatedFunction<T> m_apply(const TruncatedFunction<T>& f) {
    const long long N = f.cap();
    if (N < 2) throw Error("operator needs cap >= 2");
    TruncatedFunction<T> g;
    g.values.resize(f.values.size());
    g(0) = f(0) + f(1);
    for (long long n = 1; n < N; ++n) g(n) = f(0) + f(n + 1) + f(n - 1);
    g(N) = f(0) + f.at_inf + f(N - 1);
    g.at_inf = f(0) + f.at_inf + f.at_inf;
    return g;
}

struct PowerIterationResult {
    double lambda = 0.0;
    TruncatedFunction<double> ell;
    long long iterations = 0;
    double min_ratio = 0.0, max_ratio = 0.0; // final Collatz-Wielandt bracket
};

/// Power iteration f -> Mf / (Mf)(0) from f = 1, stopping when the
/// sup-norm change drops below tol. The returned ell is normalized with
/// ell(0) = 1; lambda is the final (Mf)(0).
inline PowerIterationResult power_iteration(long long N, double tol, long long max_iter) {
    if (N < 10) throw Error("cap too small");
    auto f = TruncatedFunction<double>::constant(N, 1.0);
    PowerIterationResult res;
    for (long long it = 1; it <= max_iter; ++it) {
        auto g = m_apply(f);
        double mn = g.at_inf / f.at_inf, mx = mn;
        for (long long n = 0; n <= N; ++n) {
            double r = g(n) / f(n);
            mn = std::min(mn, r);
            mx = std::max(mx, r);
        }
        double lambda = g(0); // f(0) == 1 after the first normalization
        double change = 0.0;
        for (long long n = 0; n <= N; ++n) {
            g(n) /= lambda;
            change = std::max(change, std::fabs(g(n) - f(n)));
        }
        g.at_inf /= lambda;
        change = std::max(change, std::fabs(g.at_inf - f.at_inf));
        f = std::move(g);
        res.iterations = it;
        res.min_ratio = mn;
        res.max_ratio = mx;
        res.lambda = lambda;
        if (it > 1 && change < tol) {
            res.ell = std::move(f);
            return res;
        }
    }
    throw NoConvergence("power iteration exceeded max_iter");
}

// ---------------------------------------------------------------------------
// Letter frequencies

struct FrequencyReport {
    std::vector<long long> counts; // occurrences of 0..cap in the expansion
    long long count_inf = 0;
    long long total = 0;
    int depth = 0;

    double proportion(long long n) const {
        return static_cast<double>(counts[static_cast<std::size_t>(n)]) / static_cast<double>(total);
    }
    double proportion_inf() const {
        return static_cast<double>(count_inf) / static_cast<double>(total);
    }
};

/// Letter counts of the depth-fold expansion of the letter 0, computed
/// on count vectors rather than materialized words.
inline FrequencyReport frequency_estimate(int depth) {
    if (depth < 1 || depth > 45) throw Error("depth out of range");
    FrequencyReport rep;
    rep.depth = depth;
    std::vector<long long> c(static_cast<std::size_t>(depth) + 2, 0);
    long long cinf = 0;
    c[0] = 1;
    for (int step = 0; step < depth; ++step) {
        std::vector<long long> n(c.size(), 0);
        long long ninf = 0;
        n[0] += c[0];
        n[1] += c[0];
        for (std::size_t k = 1; k + 1 < c.size(); ++k) {
            if (c[k] == 0) continue;
            n[0] += c[k];
            n[k + 1] += c[k];
            n[k - 1] += c[k];
        }
        n[0] += cinf;
        ninf += 2 * cinf;
        c = std::move(n);
        cinf = ninf;
    }
    rep.counts.assign(c.begin(), c.begin() + depth + 1);
    rep.count_inf = cinf;
    rep.total = cinf;
    for (long long k : rep.counts) rep.total += k;
    return rep;
}

// ---------------------------------------------------------------------------
// Delone sets

/// Exact geometric realisation of a window of the fixed point
/// ... rho^k(inf) | rho^k(0) ...: sorted left endpoints with tile labels.
struct DeloneSet {
    std::vector<Dyadic> points;     // sorted left endpoints
    std::vector<long long> labels;  // label of the tile starting at points[i]
    Dyadic window_left, window_right;

    long long tile_count() const { return static_cast<long long>(points.size()); }
};

namespace detail {

inline void expand_labels(std::vector<long long>& word) {
    std::vector<long long> out;
    out.reserve(word.size() * 3);
    for (long long n : word) {
        out.push_back(0);
        if (n == kInfLabel) {
            out.push_back(kInfLabel);
            out.push_back(kInfLabel);
        } else if (n == 0) {
            out.push_back(1);
        } else {
            out.push_back(n + 1);
            out.push_back(n - 1);
        }
    }
    word = std::move(out);
}

} // namespace detail

/// Build the two-sided fixed-point window from the seed inf | 0 and
/// realise it as an exact dyadic point set. A nonzero per_side_cap
/// trims each side to that many tiles between iterations, which keeps
/// deep windows affordable.
inline DeloneSet delone_build(int iterations, long long per_side_cap = 0) {
    // seed validity: the image of inf ends in inf and the image of 0
    // starts with 0, so the two-sided iteration nests
    {
        std::vector<long long> probe = {kInfLabel};
        detail::expand_labels(probe);
        if (probe.back() != kInfLabel) throw Error("seed not nested on the left");
        probe = {0};
        detail::expand_labels(probe);
        if (probe.front() != 0) throw Error("seed not nested on the right");
    }
    std::vector<long long> left = {kInfLabel};
    std::vector<long long> right = {0};
    for (int k = 0; k < iterations; ++k) {
        detail::expand_labels(left);
        detail::expand_labels(right);
        if (per_side_cap > 0) {
            if (static_cast<long long>(left.size()) > per_side_cap)
                left.erase(left.begin(), left.end() - per_side_cap);
            if (static_cast<long long>(right.size()) > per_side_cap)
                right.resize(static_cast<std::size_t>(per_side_cap));
        }
    }

    DeloneSet d;
    d.points.reserve(left.size() + right.size());
    d.labels.reserve(left.size() + right.size());
    Dyadic x(0);
    std::vector<Dyadic> lp(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        // walk leftwards from the origin
        std::size_t idx = left.size() - 1 - i;
        x = x - natural_length(left[idx]);
        lp[idx] = x;
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
        d.points.push_back(lp[i]);
        d.labels.push_back(left[i]);
    }
    x = Dyadic(0);
    for (std::size_t i = 0; i < right.size(); ++i) {
        d.points.push_back(x);
        d.labels.push_back(right[i]);
        x = x + natural_length(right[i]);
    }
    d.window_left = d.points.front();
    d.window_right = x;
    return d;
}

struct DeloneAudit {
    Dyadic min_gap, sup_gap;
    bool gaps_admissible = false;       // every gap is 2 - 2^{-n} or exactly 2
    bool sup_gap_only_at_infinity = false;
    long long distinct_gap_count = 0;
    long long inflation_checked = 0;
    bool inflation_ok = false;
    long long tile_count = 0;
};

/// Exact audits: gap statistics, admissibility of gap values, and the
/// inflation property (5/2) Lambda within Lambda on in-window points.
inline DeloneAudit audit_delone(const DeloneSet& d) {
    if (d.points.empty()) throw Error("empty window");
    DeloneAudit a;
    a.tile_count = d.tile_count();
    std::set<Dyadic> distinct;
    bool first = true;
    bool admissible = true;
    bool sup_at_inf = true;
    const Dyadic two(2);
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        Dyadic gap = (i + 1 < d.points.size() ? d.points[i + 1] : d.window_right) - d.points[i];
        if (first || gap < a.min_gap) a.min_gap = gap;
        if (first || a.sup_gap < gap) a.sup_gap = gap;
        first = false;
        distinct.insert(gap);
        bool is_two = gap == two;
        Dyadic rem = two - gap;
        bool is_pow2_inv = rem.num() == 1;
        if (!is_two && !is_pow2_inv) admissible = false;
        if (is_two != (d.labels[i] == kInfLabel)) sup_at_inf = false;
    }
    a.gaps_admissible = admissible;
    a.sup_gap_only_at_infinity = sup_at_inf && a.sup_gap == two;
    a.distinct_gap_count = static_cast<long long>(distinct.size());

    a.inflation_ok = true;
    const Dyadic& lo = d.points.front();
    const Dyadic& hi = d.points.back();
    for (const auto& x : d.points) {
        Dyadic y = (x * 5).shift_right(1); // x * 5/2
        if (y < lo || hi < y) continue;
        ++a.inflation_checked;
        if (!std::binary_search(d.points.begin(), d.points.end(), y))
            a.inflation_ok = false;
    }
    return a;
}

} // namespace subspec

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "apartdomain/basis.hpp"
#include "apartdomain/certificates.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/ideal.hpp"
#include "apartdomain/rational.hpp"
#include "apartdomain/separation.hpp"

namespace apartdomain::domains {

// Rational zigzag enumeration shared by the interval and lower-real bases.
inline Rat rational_at(Nat i) {
    auto [a, b] = unpair_index(i);
    const BigInt n = (a % 2 == 1) ? BigInt((a + 1) / 2) : -BigInt(a / 2);
    return Rat(n, BigInt(b) + 1);
}

inline Nat rational_index(const Rat& r) {
    const BigInt& n = r.num();
    const Nat a = n > 0 ? static_cast<Nat>(2 * n - 1) : static_cast<Nat>(-2 * n);
    const Nat b = static_cast<Nat>(r.den() - 1);
    return pair_index(a, b);
}

struct IntervalCode {
    Rat lo, hi;
    Code code() const { return Code{"(" + lo.str() + "," + hi.str() + ")"}; }
};

inline std::optional<IntervalCode> parse_interval_uncached(const Code& c) {
    const std::string& s = c.text;
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') return std::nullopt;
    const auto comma = s.find(',');
    if (comma == std::string::npos) return std::nullopt;
    auto lo = Rat::parse(s.substr(1, comma - 1));
    auto hi = Rat::parse(s.substr(comma + 1, s.size() - comma - 2));
    if (!lo || !hi || !(*lo < *hi)) return std::nullopt;
    return IntervalCode{*lo, *hi};
}

/// Parse with a per-thread memo: deep searches revisit the same chain codes
/// many times and the rationals involved get large.
inline std::optional<IntervalCode> parse_interval(const Code& c) {
    thread_local std::unordered_map<std::string, std::optional<IntervalCode>> cache;
    if (cache.size() > 200000) cache.clear();
    const auto it = cache.find(c.text);
    if (it != cache.end()) return it->second;
    auto parsed = parse_interval_uncached(c);
    cache.emplace(c.text, parsed);
    return parsed;
}

/// Basis of the partial Dedekind reals: rational intervals (p,q) with p < q
/// under strict nesting. Canonical serialization "(p/q,r/s)".
inline DescriptorPtr interval_basis() {
    static const DescriptorPtr desc = [] {
        auto d = std::make_shared<BasisDescriptor>();
        d->name = "interval";
        d->reflexive = false;
        d->pointed = false;
        d->valid = [](const Code& c) { return parse_interval(c).has_value(); };
        d->prec = [](const Code& a, const Code& b) {
            const auto x = parse_interval(a), y = parse_interval(b);
            return x && y && x->lo < y->lo && y->hi < x->hi;
        };
        d->enumerate = [](Nat i) {
            auto [ia, ib] = unpair_index(i);
            const Rat r1 = rational_at(ia), r2 = rational_at(ib);
            if (r1 < r2) return IntervalCode{r1, r2}.code();
            if (r2 < r1) return IntervalCode{r2, r1}.code();
            return IntervalCode{r1, r1 + Rat(1)}.code();
        };
        d->index_of = [](const Code& c) -> std::optional<Nat> {
            const auto iv = parse_interval(c);
            if (!iv) return std::nullopt;
            return pair_index(rational_index(iv->lo), rational_index(iv->hi));
        };
        d->delta_waybelow = d->prec;
        d->delta_below = [](const Code& a, const Code& b) {
            const auto x = parse_interval(a), y = parse_interval(b);
            return x && y && x->lo <= y->lo && y->hi <= x->hi;
        };
        d->refine = [](const Code& a, const Code& b) {
            const auto x = parse_interval(a), y = parse_interval(b);
            if (!x || !y) return false;
            const Rat lo = x->lo > y->lo ? x->lo : y->lo;
            const Rat hi = x->hi < y->hi ? x->hi : y->hi;
            return lo < hi;
        };
        d->bounded_pair = [](const Code& a, const Code& b) {
            const auto x = parse_interval(a), y = parse_interval(b);
            if (!x || !y) return false;
            const Rat lo = x->lo > y->lo ? x->lo : y->lo;
            const Rat hi = x->hi < y->hi ? x->hi : y->hi;
            return lo <= hi;
        };
        d->interpolator = [](const Code& a, const Code& b) {
            const auto x = parse_interval(a), y = parse_interval(b);
            if (!x || !y) throw InvalidCode(a.text + " / " + b.text);
            return IntervalCode{midpoint(x->lo, y->lo), midpoint(y->hi, x->hi)}.code();
        };
        d->below_separator = [](const Code& b, const Code& c) {
            // not (down(b) below down(c)): produce a < b outside down(c)
            const auto x = parse_interval(b), y = parse_interval(c);
            if (!x || !y) throw InvalidCode(b.text + " / " + c.text);
            if (y->lo < x->lo)
                return IntervalCode{midpoint(y->lo, x->lo), x->hi + Rat(1)}.code();
            return IntervalCode{x->lo - Rat(1), midpoint(x->hi, y->hi)}.code();
        };
        d->down_start = [](const Code& b) {
            const auto x = parse_interval(b);
            if (!x) throw InvalidCode(b.text);
            return IntervalCode{x->lo - Rat(1), x->hi + Rat(1)}.code();
        };
        return d;
    }();
    return desc;
}

/// A point of the real line presented as a shrinking interval chain with a
/// geometric width schedule: width(n) <= width(0) * 2^-n.
struct RealPoint {
    std::function<std::pair<Rat, Rat>(Nat)> approx;
};

/// Embeds a rational value; shrink_base 2 is the dyadic chain, 3 the thirds
/// chain (both honor the dyadic width schedule).
inline RealPoint rational_point(const Rat& v, unsigned shrink_base = 2) {
    return RealPoint{[v, shrink_base](Nat n) {
        Rat eps(1);
        for (Nat k = 0; k < n; ++k) eps = eps / Rat(static_cast<long long>(shrink_base));
        return std::make_pair(v - eps, v + eps);
    }};
}

namespace detail_real {

inline unsigned isqrt(unsigned n) {
    unsigned a = 0;
    while ((a + 1) * (a + 1) <= n) ++a;
    return a;
}

/// Bisection bracket around sqrt(radicand) after `steps` halvings of the
/// starting interval (lo0, hi0); the invariant lo^2 < radicand < hi^2 is
/// strict because the radicand is not a perfect square.
inline std::pair<Rat, Rat> sqrt_bracket(unsigned radicand, Rat lo, Rat hi, Nat steps) {
    const Rat n(static_cast<long long>(radicand));
    for (Nat k = 0; k < steps; ++k) {
        const Rat mid = midpoint(lo, hi);
        if (mid * mid < n)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

} // namespace detail_real

/// sqrt of a non-square natural via dyadic bisection on (isqrt, isqrt + 1),
/// widened so the chain is strictly nesting.
inline RealPoint sqrt_point(unsigned radicand) {
    const unsigned root = detail_real::isqrt(radicand);
    if (root * root == radicand)
        throw PreconditionViolated("sqrt point requires a non-square natural");
    const Rat lo0(static_cast<long long>(root)), hi0 = lo0 + Rat(1);
    return RealPoint{[radicand, lo0, hi0](Nat n) {
        auto [lo, hi] = detail_real::sqrt_bracket(radicand, lo0, hi0, n);
        const Rat margin = Rat(1) / Rat::pow2(static_cast<long>(n) + 1);
        return std::make_pair(lo - margin, hi + margin);
    }};
}

/// Alternative chain for the same point: bisection on a wider start with
/// different margins. Used to exercise chain-independence of the semantics.
inline RealPoint sqrt_point_alt(unsigned radicand) {
    const unsigned root = detail_real::isqrt(radicand);
    if (root * root == radicand)
        throw PreconditionViolated("sqrt point requires a non-square natural");
    const Rat lo0(static_cast<long long>(root));
    const Rat hi0 = lo0 + Rat(2);
    return RealPoint{[radicand, lo0, hi0](Nat n) {
        auto [lo, hi] = detail_real::sqrt_bracket(radicand, lo0, hi0, n);
        const Rat margin = Rat(1) / Rat::pow2(static_cast<long>(n));
        return std::make_pair(lo - margin, hi + margin);
    }};
}

/// Embedding of a real point into the interval domain. The member query
/// semi-decides p < x < q by chain refinement; the refuter produces a
/// replayable witness once an approximant clears (p,q) on one side; the
/// locatedness oracles refine to width below the query gaps.
inline ApproxElement iota_real(const RealPoint& pt, const std::string& label) {
    DescriptorPtr desc = interval_basis();
    const auto first = pt.approx(0);
    if (!(first.first < first.second)) throw ScheduleViolation(label + " at index 0");
    const Rat w0 = first.second - first.first;

    auto chain_fn = [pt, w0, label](Nat n) {
        const auto [lo, hi] = pt.approx(n);
        if (!(lo < hi)) throw ScheduleViolation(label + " at index " + std::to_string(n));
        Rat bound = w0;
        for (Nat k = 0; k < n; ++k) bound = bound / Rat(2);
        if (hi - lo > bound) throw ScheduleViolation(label + " at index " + std::to_string(n));
        return IntervalCode{lo, hi}.code();
    };
    ApproxElement base(desc, label, chain_fn);
    const ApproxElement view = base;  // shares the memoized chain, no oracles

    base.with_refuter([view](const Code& b, Fuel fuel) -> std::optional<RefuteBelowWitness> {
        const auto q = parse_interval(b);
        if (!q) return std::nullopt;
        for (Nat k = 0; k <= fuel.budget; ++k) {
            const auto m = parse_interval(view.chain_at(k));
            if (m->hi < q->lo) {
                const Code sep = IntervalCode{midpoint(m->hi, q->lo), q->hi + Rat(1)}.code();
                return RefuteBelowWitness{b, sep,
                                          EvIncompatibleMember{m->code(), k + 1}};
            }
            if (q->hi < m->lo) {
                const Code sep = IntervalCode{q->lo - Rat(1), midpoint(q->hi, m->lo)}.code();
                return RefuteBelowWitness{b, sep,
                                          EvIncompatibleMember{m->code(), k + 1}};
            }
        }
        return std::nullopt;
    });

    // The locatedness bound: a valid RealPoint decides every basis pair
    // after at most width-schedule-many refinements; the cap only guards
    // against schedule-violating inputs.
    constexpr Nat kOracleCap = 100000;
    StrongMaxOracle sm = [view](const Code& uc, const Code& vc) -> StrongMaxAnswer {
        const auto u = parse_interval(uc), v = parse_interval(vc);
        if (!u || !v) throw OracleFailure("strongmax query on invalid interval codes");
        for (Nat k = 0; k <= kOracleCap; ++k) {
            const auto m = parse_interval(view.chain_at(k));
            if (u->lo < m->lo && m->hi < u->hi) {
                const auto mem = view.member(uc, Fuel{k});
                return {true, mem.fuel_used, std::nullopt};
            }
            if (m->hi < v->lo) {
                HausdorffCert h{"principal:" + vc.text, view.label(),
                                IntervalCode{midpoint(m->hi, v->lo), v->hi + Rat(1)}.code(), 0,
                                m->code(), k + 1};
                return {false, 0, std::move(h)};
            }
            if (v->hi < m->lo) {
                HausdorffCert h{"principal:" + vc.text, view.label(),
                                IntervalCode{v->lo - Rat(1), midpoint(v->hi, m->lo)}.code(), 0,
                                m->code(), k + 1};
                return {false, 0, std::move(h)};
            }
        }
        throw OracleFailure("strongmax refinement exceeded cap; width schedule broken?");
    };
    base.with_sharp(derive_sharp(sm));
    base.with_strongmax(std::move(sm));
    return base;
}

} // namespace apartdomain::domains

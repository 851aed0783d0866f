#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "apartdomain/basis.hpp"
#include "apartdomain/certificates.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/ideal.hpp"
#include "apartdomain/rational.hpp"
#include "apartdomain/domains/intervals.hpp"  // rational_at / rational_index

namespace apartdomain::domains {

inline Code rat_code(const Rat& r) { return Code{r.str()}; }

/// Basis of the lower reals: the rationals under their strict order.
/// The completion has no least element; delta_bot answers false uniformly,
/// which is what positivity searches consume.
inline DescriptorPtr rational_basis() {
    static const DescriptorPtr desc = [] {
        auto d = std::make_shared<BasisDescriptor>();
        d->name = "lower";
        d->reflexive = false;
        d->pointed = false;
        d->valid = [](const Code& c) { return Rat::parse(c.text).has_value(); };
        d->prec = [](const Code& a, const Code& b) {
            const auto x = Rat::parse(a.text), y = Rat::parse(b.text);
            return x && y && *x < *y;
        };
        d->enumerate = [](Nat i) { return rat_code(rational_at(i)); };
        d->index_of = [](const Code& c) -> std::optional<Nat> {
            const auto r = Rat::parse(c.text);
            if (!r) return std::nullopt;
            return rational_index(*r);
        };
        d->delta_bot = [](const Code&) { return false; };
        d->delta_waybelow = d->prec;
        d->delta_below = [](const Code& a, const Code& b) {
            const auto x = Rat::parse(a.text), y = Rat::parse(b.text);
            return x && y && *x <= *y;
        };
        d->refine = [](const Code&, const Code&) { return true; };
        d->bounded_pair = [](const Code&, const Code&) { return true; };
        d->interpolator = [](const Code& a, const Code& b) {
            const auto x = Rat::parse(a.text), y = Rat::parse(b.text);
            if (!x || !y) throw InvalidCode(a.text + " / " + b.text);
            return rat_code(midpoint(*x, *y));
        };
        d->below_separator = [](const Code& b, const Code& c) {
            const auto x = Rat::parse(b.text), y = Rat::parse(c.text);
            if (!x || !y) throw InvalidCode(b.text + " / " + c.text);
            return rat_code(midpoint(*y, *x));  // y < separator < x
        };
        d->down_start = [](const Code& b) {
            const auto x = Rat::parse(b.text);
            if (!x) throw InvalidCode(b.text);
            return rat_code(*x - Rat(1));
        };
        return d;
    }();
    return desc;
}

/// The lower real of a rational value: the strict lower cut.
inline ApproxElement lower_rat(const Rat& v) {
    ApproxElement e(rational_basis(), "lower:rat:" + v.str(), [v](Nat n) {
        return rat_code(v - Rat(1) / Rat::pow2(static_cast<long>(n)));
    });
    e.with_member([v](const Code& c) {
        const auto p = Rat::parse(c.text);
        if (!p) return Tri::no;
        return *p < v ? Tri::yes : Tri::no;
    }, true);
    e.with_refuter([v](const Code& c, Fuel) -> std::optional<RefuteBelowWitness> {
        const auto q = Rat::parse(c.text);
        if (!q || !(v < *q)) return std::nullopt;  // down(q) below L iff q <= v
        return RefuteBelowWitness{c, rat_code(midpoint(v, *q)), EvDecidedNonMember{0}};
    });
    return e;
}

/// The lower real of sqrt(n) for a non-square natural: membership is the
/// exact decision p < 0 or p^2 < n.
inline ApproxElement lower_sqrt(unsigned radicand) {
    const unsigned root = detail_real::isqrt(radicand);
    if (root * root == radicand)
        throw PreconditionViolated("lower sqrt requires a non-square natural");
    const Rat lo0(static_cast<long long>(root)), hi0 = lo0 + Rat(1);
    const Rat n(static_cast<long long>(radicand));

    ApproxElement e(rational_basis(), "lower:sqrt:" + std::to_string(radicand),
                    [radicand, lo0, hi0](Nat k) {
                        auto [lo, hi] = detail_real::sqrt_bracket(radicand, lo0, hi0, k);
                        return rat_code(lo - Rat(1) / Rat::pow2(static_cast<long>(k)));
                    });
    auto in_cut = [n](const Rat& p) { return p < Rat(0) || p * p < n; };
    e.with_member([in_cut](const Code& c) {
        const auto p = Rat::parse(c.text);
        if (!p) return Tri::no;
        return in_cut(*p) ? Tri::yes : Tri::no;
    }, true);
    e.with_refuter([radicand, lo0, hi0, in_cut](const Code& c,
                                                Fuel) -> std::optional<RefuteBelowWitness> {
        const auto q = Rat::parse(c.text);
        if (!q || in_cut(*q)) return std::nullopt;  // q <= sqrt(n) means down(q) below L
        // refine the upper bisection bound strictly under q
        for (Nat k = 0;; ++k) {
            auto [lo, hi] = detail_real::sqrt_bracket(radicand, lo0, hi0, k);
            (void)lo;
            if (hi < *q) return RefuteBelowWitness{c, rat_code(hi), EvDecidedNonMember{0}};
            if (k > 100000) throw OracleFailure("sqrt refinement exceeded cap");
        }
    });
    return e;
}

/// Flag-parameterized non-located lower real: rationals below 0 belong,
/// rationals at or above 1 do not, and the band in between follows an
/// injected flag that may be left undecided. With the flag unset, queries
/// that straddle the band stay Unknown at every fuel.
inline ApproxElement lower_flag(std::optional<bool> flag) {
    std::string label = "lower:flag:";
    label += flag ? (*flag ? "1" : "0") : "?";
    ApproxElement e(rational_basis(), label, [](Nat n) {
        return rat_code(Rat(0) - Rat(1) / Rat::pow2(static_cast<long>(n)));
    });
    e.with_member([flag](const Code& c) {
        const auto p = Rat::parse(c.text);
        if (!p) return Tri::no;
        if (*p < Rat(0)) return Tri::yes;
        if (*p >= Rat(1)) return Tri::no;
        if (!flag) return Tri::unknown;
        return *flag ? Tri::yes : Tri::no;
    }, flag.has_value());
    e.with_refuter([flag](const Code& c, Fuel) -> std::optional<RefuteBelowWitness> {
        const auto q = Rat::parse(c.text);
        if (!q) return std::nullopt;
        const Rat sup = (flag && *flag) ? Rat(1) : Rat(0);
        if (!flag) {
            // only facts independent of the flag may be used
            if (*q > Rat(1))
                return RefuteBelowWitness{c, rat_code(midpoint(Rat(1), *q)), EvDecidedNonMember{0}};
            return std::nullopt;
        }
        if (sup < *q)
            return RefuteBelowWitness{c, rat_code(midpoint(sup, *q)), EvDecidedNonMember{0}};
        return std::nullopt;
    });
    return e;
}

/// Sharpness oracle for a lower real with decidable membership: on a < b,
/// answer "a way below" when a is in the cut, otherwise refute down(b) with
/// the non-member a itself. This is the computational content of
/// locatedness of the pair (L, U).
inline SharpOracle lower_real_sharp_oracle(const ApproxElement& L) {
    if (!L.member_is_total())
        throw NotDecidable("lower real membership is only a semi-decision");
    const ApproxElement elem = L;
    return [elem](const Code& a, const Code& b) -> SharpAnswer {
        if (!elem.descriptor().prec(a, b))
            throw OracleFailure("sharp query requires a < b");
        const auto m = elem.member(a, Fuel{0});
        if (m.verdict == Tri::yes) return {true, 0, std::nullopt};
        return {false, 0, RefuteBelowWitness{b, a, EvDecidedNonMember{0}}};
    };
}

/// Decides p in L from a total sharpness oracle: Left on (p, p+1) answers
/// yes; a refutation whose separator is at most p answers no.
inline std::optional<bool> member_from_sharp_oracle(const SharpOracle& oracle, const Rat& p) {
    const SharpAnswer ans = oracle(rat_code(p), rat_code(p + Rat(1)));
    if (ans.way_below) return true;
    if (!ans.refutation) return std::nullopt;
    const auto s = Rat::parse(ans.refutation->separator.text);
    if (s && *s <= p) return false;
    return std::nullopt;
}

struct UpperAnswer {
    Tri verdict = Tri::unknown;
    std::optional<Rat> witness;  // s not in L with s < q
};

/// Semi-decides q in U for U derived from L: searches the rational
/// enumeration for s < q positively outside L.
inline UpperAnswer upper_from_lower(const ApproxElement& L, const Rat& q, Fuel fuel) {
    auto hit = staged_search(fuel, [&](Nat t) -> std::optional<Rat> {
        for (Nat i = 0; i <= t; ++i) {
            const Rat s = rational_at(i);
            if (!(s < q)) continue;
            if (L.member(rat_code(s), Fuel{t}).verdict == Tri::no) return s;
        }
        return std::nullopt;
    });
    if (hit) return {Tri::yes, *hit};
    return {};
}

} // namespace apartdomain::domains

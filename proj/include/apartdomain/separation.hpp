#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "apartdomain/certificates.hpp"
#include "apartdomain/core.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/ideal.hpp"

namespace apartdomain {

/// Semi-decides "y does not specialize x": searches for a basis code way
/// below x whose principal ideal is refutably not below y. None means
/// Unknown at this fuel, never "not apart".
inline std::optional<NotNotBelowCert> not_not_below(const ApproxElement& x,
                                                    const ApproxElement& y, Fuel fuel) {
    return detail::posnotbelow_scan(x, y, fuel);
}

inline bool replay_not_not_below(const NotNotBelowCert& cert, const ApproxElement& x,
                                 const ApproxElement& y) {
    if (cert.refutation.refuted != cert.witness) return false;
    if (x.member(cert.witness, Fuel{cert.member_fuel}).verdict != Tri::yes) return false;
    return replay_refutation(cert.refutation, y);
}

/// Semi-decides intrinsic apartness, interleaving the two directions fairly:
/// at each stage the (x,y) direction is tried before (y,x), both at the
/// stage's inner budget.
inline std::optional<ApartCert> intrinsic_apart(const ApproxElement& x, const ApproxElement& y,
                                                Fuel fuel) {
    require_same_descriptor(x.descriptor(), y.descriptor());
    return staged_search(fuel, [&](Nat t) -> std::optional<ApartCert> {
        if (auto c = detail::posnotbelow_stage(x, y, t)) return ApartCert{std::move(*c), false};
        if (auto c = detail::posnotbelow_stage(y, x, t)) return ApartCert{std::move(*c), true};
        return std::nullopt;
    });
}

/// Replays an apartness certificate against the query pair (x, y).
inline bool replay_apart(const ApartCert& cert, const ApproxElement& x, const ApproxElement& y) {
    return cert.flipped ? replay_not_not_below(cert.inner, y, x)
                        : replay_not_not_below(cert.inner, x, y);
}

/// Positivity: searches x's chain for an approximant that delta_bot rejects.
/// On pointed descriptors the certificate replays against the actual least
/// element; otherwise the evidence is the delta_bot decision itself.
inline std::optional<ApartCert> apart_from_bottom(const ApproxElement& x, Fuel fuel) {
    const BasisDescriptor& d = x.descriptor();
    if (!d.delta_bot) throw MissingDeltaBot();
    const bool pointed = d.pointed && d.bottom_code.has_value();
    return staged_search(fuel, [&](Nat t) -> std::optional<ApartCert> {
        for (Nat i = 0; i <= t; ++i) {
            const Code b = x.chain_at(i);
            if (d.delta_bot(b)) continue;
            const auto m = x.member(b, Fuel{t});
            if (m.verdict != Tri::yes) continue;
            RefuteBelowWitness w =
                pointed ? RefuteBelowWitness{b, b, EvNotPrecAnchor{*d.bottom_code}}
                        : RefuteBelowWitness{b, b, EvNotBottom{}};
            return ApartCert{NotNotBelowCert{x.label(), "bottom", b, m.fuel_used, std::move(w)},
                             false};
        }
        return std::nullopt;
    });
}

inline bool replay_apart_from_bottom(const ApartCert& cert, const ApproxElement& x) {
    const BasisDescriptor& d = x.descriptor();
    if (cert.flipped || cert.inner.refutation.refuted != cert.inner.witness) return false;
    if (x.member(cert.inner.witness, Fuel{cert.inner.member_fuel}).verdict != Tri::yes)
        return false;
    if (std::holds_alternative<EvNotBottom>(cert.inner.refutation.evidence))
        return d.delta_bot && !d.delta_bot(cert.inner.refutation.refuted);
    if (!d.pointed || !d.bottom_code) return false;
    ApproxElement bottom = principal(x.descriptor_ptr(), *d.bottom_code);
    return replay_refutation(cert.inner.refutation, bottom);
}

struct CotransitResult {
    bool with_x = false;  // true: certificate for (x, z); false: for (y, z)
    ApartCert cert;
};

/// Cotransitivity on sharp elements, mirroring the constructive proof: from
/// the certificate's witness b way below one side, interpolate b < c < a
/// chain entry of that side and query z's sharpness oracle on (b, c).
inline CotransitResult cotransit(const ApartCert& cert, const ApproxElement& x,
                                 const ApproxElement& y, const ApproxElement& z, Fuel fuel) {
    require_same_descriptor(x.descriptor(), z.descriptor());
    if (!replay_apart(cert, x, y)) throw PreconditionViolated("cotransit: certificate fails replay");
    const SharpOracle* sharp = z.sharp_oracle();
    if (!sharp) throw OracleFailure("cotransit: z carries no sharp oracle");

    const bool src_is_x = !cert.flipped;
    const ApproxElement& src = src_is_x ? x : y;
    const Code b = cert.inner.witness;

    std::optional<Nat> entry;
    for (Nat n = 0; n <= fuel.budget; ++n)
        if (src.descriptor().prec(b, src.chain_at(n))) { entry = n; break; }
    if (!entry) throw FuelExhausted("cotransit: no chain entry above witness within fuel");
    const Code c = interpolate(src.descriptor(), b, src.chain_at(*entry));

    const SharpAnswer ans = (*sharp)(b, c);
    if (ans.way_below) {
        // b way below z and down(b) not below the other side: z # other.
        const ApproxElement& other = src_is_x ? y : x;
        NotNotBelowCert inner{z.label(), other.label(), b, ans.member_fuel,
                              cert.inner.refutation};
        return {!src_is_x, ApartCert{std::move(inner), true}};
    }
    if (!ans.refutation) throw OracleFailure("cotransit: sharp oracle returned no evidence");
    // c way below src and down(c) not below z: src # z.
    const auto m = src.member(c, Fuel{*entry + 1});
    if (m.verdict != Tri::yes) throw FuelExhausted("cotransit: interpolant membership");
    NotNotBelowCert inner{src.label(), z.label(), c, m.fuel_used, *ans.refutation};
    return {src_is_x, ApartCert{std::move(inner), false}};
}

struct TightReport {
    bool found_xy = false;
    bool found_yx = false;
    bool consistent() const { return !found_xy && !found_yx; }
};

/// Consistency probe behind tightness: elements believed equal must yield no
/// certificate in either direction at the given fuel. Full tightness is a
/// universally quantified statement delegated to the finite oracle.
inline TightReport tight_consequence(const ApproxElement& x, const ApproxElement& y, Fuel fuel) {
    TightReport r;
    r.found_xy = not_not_below(x, y, fuel).has_value();
    r.found_yx = not_not_below(y, x, fuel).has_value();
    return r;
}

/// Searches chain entries of both elements for a pair that cannot be
/// refined; such a pair witnesses disjoint basic Scott opens.
inline std::optional<HausdorffCert> hausdorff_separated(const ApproxElement& x,
                                                        const ApproxElement& y, Fuel fuel) {
    require_same_descriptor(x.descriptor(), y.descriptor());
    const BasisDescriptor& d = x.descriptor();
    if (!d.refine) throw MissingRefineDecision();
    return staged_search(fuel, [&](Nat t) -> std::optional<HausdorffCert> {
        for (Nat i = 0; i <= t; ++i)
            for (Nat j = 0; j <= t; ++j) {
                const Code a = x.chain_at(i);
                const Code b = y.chain_at(j);
                if (d.refine(a, b)) continue;
                const auto ma = x.member(a, Fuel{t});
                const auto mb = y.member(b, Fuel{t});
                if (ma.verdict != Tri::yes || mb.verdict != Tri::yes) continue;
                return HausdorffCert{x.label(), y.label(), a, ma.fuel_used, b, mb.fuel_used};
            }
        return std::nullopt;
    });
}

inline bool replay_hausdorff(const HausdorffCert& cert, const ApproxElement& x,
                             const ApproxElement& y) {
    const BasisDescriptor& d = x.descriptor();
    if (!d.refine || d.refine(cert.a, cert.b)) return false;
    return x.member(cert.a, Fuel{cert.a_member_fuel}).verdict == Tri::yes &&
           y.member(cert.b, Fuel{cert.b_member_fuel}).verdict == Tri::yes;
}

/// Disjoint basic opens give apartness mechanically: the Hausdorff pair
/// (a, b) yields the witness "chain entry above a", whose principal ideal
/// contains a while a is excluded from y by incompatibility with b.
inline ApartCert apart_from_hausdorff(const ApproxElement& x, const ApproxElement& y,
                                      const HausdorffCert& cert, Fuel fuel) {
    if (!replay_hausdorff(cert, x, y))
        throw PreconditionViolated("apart_from_hausdorff: certificate fails replay");
    const BasisDescriptor& d = x.descriptor();
    for (Nat n = 0; n <= fuel.budget; ++n) {
        const Code up = x.chain_at(n);
        if (!d.prec(cert.a, up)) continue;
        const auto m = x.member(up, Fuel{n + 1});
        if (m.verdict != Tri::yes) continue;
        RefuteBelowWitness w{up, cert.a, EvIncompatibleMember{cert.b, cert.b_member_fuel}};
        return ApartCert{NotNotBelowCert{x.label(), y.label(), up, m.fuel_used, std::move(w)},
                         false};
    }
    throw FuelExhausted("apart_from_hausdorff: no chain entry above witness");
}

/// Derived sharpness: converts the Hausdorff branch of a strong-maximality
/// oracle into a refutation branch via the disjoint-opens argument.
inline SharpOracle derive_sharp(StrongMaxOracle oracle) {
    return [oracle = std::move(oracle)](const Code& a, const Code& b) -> SharpAnswer {
        const StrongMaxAnswer ans = oracle(a, b);
        if (ans.way_below) return {true, ans.member_fuel, std::nullopt};
        if (!ans.separation) throw OracleFailure("strong-maximality oracle returned no evidence");
        const HausdorffCert& h = *ans.separation;
        return {false, 0,
                RefuteBelowWitness{b, h.a, EvIncompatibleMember{h.b, h.b_member_fuel}}};
    };
}

inline SharpOracle sharp_from_strongmax(const ApproxElement& x) {
    const StrongMaxOracle* sm = x.strongmax_oracle();
    if (!sm) throw OracleFailure("sharp_from_strongmax: element carries no oracle");
    return derive_sharp(*sm);
}

struct SmythWitness {
    Code u, v;
    Code d;              // d way below x
    Nat d_member_fuel;
    bool via_way_below;  // true: u way below d; false: separation below
    std::optional<HausdorffCert> separation;  // between down(v) and down(d)
};

/// Produces the Smyth-form witness from a strong-maximality oracle,
/// realizing one direction of the Smyth equivalence.
inline SmythWitness smyth_maximal_probe(const ApproxElement& x, const Code& u, const Code& v,
                                        Fuel fuel) {
    const BasisDescriptor& d = x.descriptor();
    if (!d.prec(u, v)) throw PreconditionViolated("smyth_maximal_probe requires u < v");
    const StrongMaxOracle* sm = x.strongmax_oracle();
    if (!sm) throw OracleFailure("smyth_maximal_probe: element carries no oracle");
    const StrongMaxAnswer ans = (*sm)(u, v);

    const Code anchor = ans.way_below ? u : ans.separation->b;
    for (Nat n = 0; n <= fuel.budget; ++n) {
        const Code entry = x.chain_at(n);
        if (!d.prec(anchor, entry)) continue;
        const auto m = x.member(entry, Fuel{n + 1});
        if (m.verdict != Tri::yes) continue;
        if (ans.way_below) return {u, v, entry, m.fuel_used, true, std::nullopt};
        HausdorffCert sep{"principal:" + v.text, "principal:" + entry.text, ans.separation->a,
                          ans.separation->a_member_fuel, ans.separation->b, n + 1};
        return {u, v, entry, m.fuel_used, false, std::move(sep)};
    }
    throw FuelExhausted("smyth_maximal_probe: no chain entry above evidence");
}

inline bool replay_smyth(const SmythWitness& w, const ApproxElement& x) {
    const BasisDescriptor& d = x.descriptor();
    if (x.member(w.d, Fuel{w.d_member_fuel}).verdict != Tri::yes) return false;
    if (w.via_way_below) return d.prec(w.u, w.d);
    if (!w.separation || !d.refine) return false;
    const HausdorffCert& h = *w.separation;
    return d.prec(h.a, w.v) && d.prec(h.b, w.d) && !d.refine(h.a, h.b);
}

/// Subbasic Lawson open: either a basic Scott open (all elements way above
/// b) or a co-specialization set parameterized by an element z.
struct LawsonSubbasic {
    enum class Kind { basic_open, co_specialization } kind;
    Code b;                                  // basic_open
    std::shared_ptr<const ApproxElement> z;  // co_specialization

    static LawsonSubbasic basic(Code code) {
        return {Kind::basic_open, std::move(code), nullptr};
    }
    static LawsonSubbasic co_set(ApproxElement z) {
        return {Kind::co_specialization, Code{},
                std::make_shared<const ApproxElement>(std::move(z))};
    }
};

inline Tri lawson_neighbourhood_member(const ApproxElement& x, const LawsonSubbasic& sub,
                                       Fuel fuel) {
    if (sub.kind == LawsonSubbasic::Kind::basic_open) return way_below(x, sub.b, fuel).verdict;
    require_same_descriptor(sub.z->descriptor(), x.descriptor());
    return not_not_below(*sub.z, x, fuel) ? Tri::yes : Tri::unknown;
}

} // namespace apartdomain

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "apartdomain/basis.hpp"
#include "apartdomain/certificates.hpp"
#include "apartdomain/core.hpp"
#include "apartdomain/errors.hpp"

namespace apartdomain {

namespace detail {

/// Thread-safe memoized chain. Streams must be pure functions of the index,
/// so recomputation and caching are observationally identical.
class MemoChain {
public:
    explicit MemoChain(std::function<Code(Nat)> fn) : fn_(std::move(fn)) {}

    Code at(Nat n) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (cache_.size() <= n) cache_.push_back(fn_(static_cast<Nat>(cache_.size())));
        return cache_[n];
    }

private:
    mutable std::mutex mu_;
    mutable std::vector<Code> cache_;
    std::function<Code(Nat)> fn_;
};

/// Incremental memo for chain-scan membership: per queried code, how far the
/// chain has been scanned and the first hit if one was found. Because the
/// scan order is fixed, cached answers coincide with fresh scans.
struct MemberScanCache {
    struct Entry {
        Nat scanned_to = 0;  // next index to examine
        std::optional<Nat> hit;
    };
    std::mutex mu;
    std::unordered_map<std::string, Entry> entries;
};

} // namespace detail

/**
 * Element of a rounded ideal completion, presented as a prec-increasing
 * approximant chain. The denoted ideal is the union of the principal ideals
 * of the chain entries, so the default member query is a chain scan.
 *
 * Optional attachments:
 *  - a member decision (total or partial) overriding the chain scan;
 *  - a refuter producing replayable witnesses for "down(b) not below this";
 *  - sharpness / strong-maximality oracles.
 *
 * Values are immutable after construction and safe to share across threads.
 */
class ApproxElement {
public:
    using MemberFn = std::function<Tri(const Code&)>;
    using RefuterFn = std::function<std::optional<RefuteBelowWitness>(const Code&, Fuel)>;

    ApproxElement(DescriptorPtr desc, std::string label, std::function<Code(Nat)> chain)
        : desc_(std::move(desc)),
          label_(std::move(label)),
          chain_(std::make_shared<detail::MemoChain>(std::move(chain))),
          member_cache_(std::make_shared<detail::MemberScanCache>()) {}

    const BasisDescriptor& descriptor() const { return *desc_; }
    const DescriptorPtr& descriptor_ptr() const { return desc_; }
    const std::string& label() const { return label_; }

    Code chain_at(Nat n) const { return chain_->at(n); }

    struct MemberAnswer {
        Tri verdict = Tri::unknown;
        Nat fuel_used = 0;  // for Yes: minimal fuel at which the answer recurs
    };

    /// Semi-decides "b is in the denoted ideal" (equivalently, the principal
    /// ideal of b is way below this element) scanning indices 0..fuel.
    MemberAnswer member(const Code& b, Fuel fuel) const {
        if (member_override_) {
            const Tri t = member_override_(b);
            if (t != Tri::unknown) return {t, 0};
        }
        {
            std::lock_guard<std::mutex> lock(member_cache_->mu);
            auto& entry = member_cache_->entries[b.text];
            if (entry.hit && *entry.hit <= fuel.budget) return {Tri::yes, *entry.hit};
            if (!entry.hit) {
                for (Nat n = entry.scanned_to; n <= fuel.budget; ++n) {
                    if (desc_->prec(b, chain_->at(n))) {
                        entry.hit = n;
                        break;
                    }
                }
                if (entry.scanned_to < fuel.budget + 1) entry.scanned_to = fuel.budget + 1;
                if (entry.hit && *entry.hit <= fuel.budget) return {Tri::yes, *entry.hit};
            }
        }
        if (refute_below(b, fuel)) return {Tri::no, fuel.budget};
        return {};
    }

    /// Semi-decides "down(b) is not below this element", producing a
    /// replayable witness. Search order is stable under fuel growth.
    std::optional<RefuteBelowWitness> refute_below(const Code& b, Fuel fuel) const {
        if (refuter_) {
            if (auto w = refuter_(b, fuel)) return w;
        }
        if (principal_anchor_ && desc_->delta_below && !desc_->delta_below(b, *principal_anchor_)) {
            if (desc_->reflexive)
                return RefuteBelowWitness{b, b, EvNotPrecAnchor{*principal_anchor_}};
            if (desc_->below_separator)
                return RefuteBelowWitness{b, desc_->below_separator(b, *principal_anchor_),
                                          EvNotPrecAnchor{*principal_anchor_}};
        }
        // Generic fallback for reflexive descriptors: b itself is in down(b),
        // so a chain entry it cannot refine with excludes it from the ideal.
        if (desc_->reflexive && desc_->refine) {
            for (Nat n = 0; n <= fuel.budget; ++n) {
                const Code m = chain_->at(n);
                if (!desc_->refine(b, m))
                    return RefuteBelowWitness{b, b, EvIncompatibleMember{m, n + 1}};
            }
        }
        return std::nullopt;
    }

    // attachments (builder style; used by the domain factories)
    ApproxElement& with_member(MemberFn fn, bool total) {
        member_override_ = std::move(fn);
        member_total_ = total;
        return *this;
    }
    ApproxElement& with_refuter(RefuterFn fn) {
        refuter_ = std::move(fn);
        return *this;
    }
    ApproxElement& with_sharp(SharpOracle o) {
        sharp_ = std::make_shared<SharpOracle>(std::move(o));
        return *this;
    }
    ApproxElement& with_strongmax(StrongMaxOracle o) {
        strongmax_ = std::make_shared<StrongMaxOracle>(std::move(o));
        return *this;
    }
    ApproxElement& with_principal_anchor(Code c) {
        principal_anchor_ = std::move(c);
        return *this;
    }

    bool member_is_total() const { return member_total_; }
    const SharpOracle* sharp_oracle() const { return sharp_ ? sharp_.get() : nullptr; }
    const StrongMaxOracle* strongmax_oracle() const {
        return strongmax_ ? strongmax_.get() : nullptr;
    }
    const std::optional<Code>& principal_anchor() const { return principal_anchor_; }

private:
    DescriptorPtr desc_;
    std::string label_;
    std::shared_ptr<detail::MemoChain> chain_;
    std::shared_ptr<detail::MemberScanCache> member_cache_;
    MemberFn member_override_;
    bool member_total_ = false;
    RefuterFn refuter_;
    std::shared_ptr<SharpOracle> sharp_;
    std::shared_ptr<StrongMaxOracle> strongmax_;
    std::optional<Code> principal_anchor_;
};

/// The element denoting the principal ideal of b. Reflexive descriptors use
/// the constant chain; otherwise the chain interpolates towards b from a
/// descriptor-supplied start strictly below it.
inline ApproxElement principal(DescriptorPtr desc, const Code& b) {
    if (desc->valid && !desc->valid(b)) throw InvalidCode(b.text);
    const std::string label = "principal:" + b.text;
    std::function<Code(Nat)> chain;
    if (desc->reflexive) {
        chain = [b](Nat) { return b; };
    } else {
        if (!desc->down_start || !desc->interpolator)
            throw MissingDelta("principal chain on " + desc->name);
        auto d = desc;
        chain = [d, b](Nat n) {
            Code c = d->down_start(b);
            for (Nat k = 0; k < n; ++k) c = d->interpolator(c, b);
            return c;
        };
    }
    ApproxElement e(desc, label, std::move(chain));
    e.with_member(
        [d = std::move(desc), b](const Code& a) { return d->prec(a, b) ? Tri::yes : Tri::no; },
        true);
    e.with_principal_anchor(b);
    return e;
}

struct WayBelowAnswer {
    Tri verdict = Tri::unknown;
    Nat fuel_used = 0;
    std::optional<RefuteBelowWitness> refutation;
};

/// Judges "down(b) way below y": principal-way-below reduces to rounded
/// membership, so Yes defers to the member query and No to the refuter.
inline WayBelowAnswer way_below(const ApproxElement& y, const Code& b, Fuel fuel) {
    y.descriptor().require_valid(b);
    const auto m = y.member(b, fuel);
    if (m.verdict == Tri::yes) return {Tri::yes, m.fuel_used, std::nullopt};
    if (auto w = y.refute_below(b, fuel)) return {Tri::no, 0, std::move(w)};
    return {};
}

/// Replays a refutation witness against the element it refutes.
inline bool replay_refutation(const RefuteBelowWitness& w, const ApproxElement& y) {
    const BasisDescriptor& d = y.descriptor();
    if (const auto* nb = std::get_if<EvNotBottom>(&w.evidence)) {
        (void)nb;
        return d.delta_bot && !d.delta_bot(w.refuted) && w.separator == w.refuted;
    }
    if (!d.prec(w.separator, w.refuted)) return false;
    if (const auto* im = std::get_if<EvIncompatibleMember>(&w.evidence)) {
        return d.refine && !d.refine(w.separator, im->member) &&
               y.member(im->member, Fuel{im->member_fuel}).verdict == Tri::yes;
    }
    if (const auto* pa = std::get_if<EvNotPrecAnchor>(&w.evidence)) {
        return y.principal_anchor() == std::optional<Code>(pa->anchor) &&
               !d.prec(w.separator, pa->anchor);
    }
    if (const auto* dm = std::get_if<EvDecidedNonMember>(&w.evidence)) {
        return y.member(w.separator, Fuel{dm->query_fuel}).verdict == Tri::no;
    }
    return false;
}

namespace detail {

/// One stage of the scan behind "y does not specialize x": examines chain
/// entries of x and enumerated codes with index <= t under inner budget t.
/// A pure function of t, so the first firing stage is fuel-independent and
/// answers are bit-identical under fuel growth.
inline std::optional<NotNotBelowCert> posnotbelow_stage(const ApproxElement& x,
                                                        const ApproxElement& y, Nat t) {
    const BasisDescriptor& d = x.descriptor();
    for (Nat i = 0; i <= t; ++i) {
        for (int source = 0; source < 2; ++source) {
            const Code b = source == 0 ? x.chain_at(i) : d.enumerate(i);
            const auto m = x.member(b, Fuel{t});
            if (m.verdict != Tri::yes) continue;
            if (auto w = y.refute_below(b, Fuel{t}))
                return NotNotBelowCert{x.label(), y.label(), b, m.fuel_used, std::move(*w)};
        }
    }
    return std::nullopt;
}

inline std::optional<NotNotBelowCert> posnotbelow_scan(const ApproxElement& x,
                                                       const ApproxElement& y, Fuel fuel) {
    require_same_descriptor(x.descriptor(), y.descriptor());
    return staged_search(fuel, [&](Nat t) { return posnotbelow_stage(x, y, t); });
}

} // namespace detail

struct BelowAnswer {
    Tri verdict = Tri::unknown;
    std::optional<NotNotBelowCert> counterexample;  // for No
};

/// Semi-decides x below y. No is witnessed by a basis code way below x whose
/// principal ideal is refutably not below y; Yes is only produced where the
/// descriptor supports an exact decision (principal ideals with delta_below).
inline BelowAnswer below(const ApproxElement& x, const ApproxElement& y, Fuel fuel) {
    require_same_descriptor(x.descriptor(), y.descriptor());
    const BasisDescriptor& d = x.descriptor();
    if (x.principal_anchor() && y.principal_anchor() && d.delta_below &&
        d.delta_below(*x.principal_anchor(), *y.principal_anchor()))
        return {Tri::yes, std::nullopt};
    if (auto cert = detail::posnotbelow_scan(x, y, fuel))
        return {Tri::no, std::move(cert)};
    return {};
}

struct ChainReport {
    bool ok = true;
    std::string detail;
    std::optional<Nat> failed_index;
};

/// Validates the chain invariant and member/refuter coherence up to fuel.
inline ChainReport chain_monotone_check(const ApproxElement& x, Fuel fuel) {
    const BasisDescriptor& d = x.descriptor();
    for (Nat n = 0; n + 1 <= fuel.budget; ++n)
        if (!d.prec(x.chain_at(n), x.chain_at(n + 1)))
            return {false, "chain not prec-increasing", n};
    for (Nat n = 0; n <= fuel.budget; ++n) {
        const Code b = x.chain_at(n);
        if (x.member(b, Fuel{fuel.budget + 1}).verdict != Tri::yes)
            return {false, "chain entry not a member: " + b.text, n};
    }
    for (Nat i = 0; i <= fuel.budget; ++i) {
        for (int source = 0; source < 2; ++source) {
            const Code b = source == 0 ? x.chain_at(i) : d.enumerate(i);
            if (x.member(b, fuel).verdict == Tri::yes && x.refute_below(b, fuel))
                return {false, "member/refuter incoherence on " + b.text, i};
        }
    }
    return {};
}

} // namespace apartdomain

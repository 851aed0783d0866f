#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apartdomain/core.hpp"
#include "apartdomain/errors.hpp"

namespace apartdomain {

/**
 * Computational seed of a continuous dcpo: a countable abstract basis
 * together with whatever decidability data the domain supports.
 *
 * `prec` decides the transitive interpolative relation on codes. For a
 * rounded ideal completion, way-below on principal ideals coincides with
 * prec, which is why `delta_waybelow` usually aliases it. All optional
 * fields may be left empty; operations that need them raise the
 * corresponding Missing* error.
 */
struct BasisDescriptor {
    std::string name;
    bool reflexive = false;  // reflexive prec yields an algebraic completion
    bool pointed = false;    // completion has a least element (see bottom_code)

    std::function<Code(Nat)> enumerate;  // total surjection onto codes
    std::function<bool(const Code&)> valid;
    std::function<bool(const Code&, const Code&)> prec;

    // decidability data
    std::function<bool(const Code&)> delta_bot;
    std::function<bool(const Code&, const Code&)> delta_waybelow;
    std::function<bool(const Code&, const Code&)> delta_below;
    std::function<bool(const Code&, const Code&)> bounded_pair;
    std::function<bool(const Code&, const Code&)> refine;

    /// Constructive interpolation witness: for a < b produces c with
    /// a < c < b. Required for non-reflexive descriptors; reflexive ones
    /// default to identity-on-b.
    std::function<Code(const Code&, const Code&)> interpolator;

    /// Given delta_below(b, c) = false, produces a with a < b and
    /// not (a < c) — the separator behind principal-ideal refutations.
    std::function<Code(const Code&, const Code&)> below_separator;

    /// Some code strictly below b (the interpolative property guarantees one
    /// exists). Needed by non-reflexive descriptors to seed principal chains.
    std::function<Code(const Code&)> down_start;

    /// Least upper bound of a bounded pair of codes (compacts), if any.
    /// Present on bounded-complete algebraic descriptors.
    std::function<std::optional<Code>(const Code&, const Code&)> join2;
    std::optional<Code> bottom_code;

    /// Inverse of the enumeration; used by coding-argument tests.
    std::function<std::optional<Nat>(const Code&)> index_of;

    void require_valid(const Code& c) const {
        if (valid && !valid(c)) throw InvalidCode(c.text + " (domain " + name + ")");
    }
};

using DescriptorPtr = std::shared_ptr<const BasisDescriptor>;

inline void require_same_descriptor(const BasisDescriptor& a, const BasisDescriptor& b) {
    if (a.name != b.name) throw DescriptorMismatch(a.name + " vs " + b.name);
}

/// Interpolation: for a < b yields c with a < c < b, deterministically.
inline Code interpolate(const BasisDescriptor& basis, const Code& a, const Code& b) {
    basis.require_valid(a);
    basis.require_valid(b);
    if (!basis.prec(a, b))
        throw PreconditionViolated("interpolate requires a < b; got " + a.text + ", " + b.text);
    if (basis.interpolator) return basis.interpolator(a, b);
    if (basis.reflexive) return b;  // reflexivity permits c = b
    throw MissingDelta("interpolator on non-reflexive descriptor " + basis.name);
}

struct ProbeReport {
    bool ok = true;
    std::string law;  // violated law, empty when ok
    std::vector<Code> counterexample;
};

/// Exhaustive check of transitivity and the two mixed monotonicity laws
/// (below-then-way-below and way-below-then-below) over all code triples
/// with enumeration index <= fuel. The mixed laws are skipped unless the
/// descriptor carries both delta decisions.
inline ProbeReport prec_transitive_probe(const BasisDescriptor& basis, Fuel fuel) {
    std::vector<Code> codes;
    codes.reserve(fuel.budget + 1);
    for (Nat i = 0; i <= fuel.budget; ++i) codes.push_back(basis.enumerate(i));

    const bool mixed = static_cast<bool>(basis.delta_below) && static_cast<bool>(basis.delta_waybelow);
    for (const Code& x : codes)
        for (const Code& y : codes)
            for (const Code& z : codes) {
                if (basis.prec(x, y) && basis.prec(y, z) && !basis.prec(x, z))
                    return {false, "transitivity", {x, y, z}};
                if (mixed) {
                    if (basis.delta_below(x, y) && basis.delta_waybelow(y, z) &&
                        !basis.delta_waybelow(x, z))
                        return {false, "below-then-way-below", {x, y, z}};
                    if (basis.delta_waybelow(x, y) && basis.delta_below(y, z) &&
                        !basis.delta_waybelow(x, z))
                        return {false, "way-below-then-below", {x, y, z}};
                }
            }
    return {};
}

// Cantor pairing; used by the product and several enumerations.
inline Nat pair_index(Nat a, Nat b) {
    const std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Nat>(s * (s + 1) / 2 + a);
}

inline std::pair<Nat, Nat> unpair_index(Nat n) {
    std::uint64_t t = 0;
    std::uint64_t k = 0;
    while (t + k + 1 <= n) { ++k; t += k; }
    const Nat a = static_cast<Nat>(n - t);
    return {a, static_cast<Nat>(k - a)};
}

} // namespace apartdomain

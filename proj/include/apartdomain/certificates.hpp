#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "apartdomain/core.hpp"

namespace apartdomain {

// Replayable positive evidence. Certificates carry everything needed to
// re-check a judgement using only decidable descriptor data and finitely
// many member queries; replay functions live in ideal.hpp / separation.hpp.

/// Evidence that `separator` is not a member of the target element: some
/// known member of the element fails to be refinable with it. Two members
/// of one ideal always share an upper bound in the basis, so a failed
/// refine decision excludes membership.
struct EvIncompatibleMember {
    Code member;       // known member of the target element
    Nat member_fuel;   // fuel at which the target's member query confirms it
};

/// Evidence against membership in a principal ideal: the descriptor's own
/// prec decision rejects `separator < anchor`.
struct EvNotPrecAnchor {
    Code anchor;
};

/// The target element decides membership itself and answers No.
struct EvDecidedNonMember {
    Nat query_fuel;
};

/// Positivity evidence: delta_bot rejects the code, so its principal ideal
/// cannot be below a least element.
struct EvNotBottom {};

using RefuteEvidence =
    std::variant<EvIncompatibleMember, EvNotPrecAnchor, EvDecidedNonMember, EvNotBottom>;

/// Positive, replayable witness that the principal ideal of `refuted` is
/// not below a target element: `separator` lies strictly inside that
/// principal ideal but outside the target.
struct RefuteBelowWitness {
    Code refuted;    // b in the judgement "down(b) not below y"
    Code separator;  // a with a < b and a outside y (a == b for EvNotBottom)
    RefuteEvidence evidence;
};

/// Witness that y does not specialize x: a basis code way below x whose
/// principal ideal is refutably not below y.
struct NotNotBelowCert {
    std::string from_label;  // x
    std::string to_label;    // y
    Code witness;            // b with b way below x
    Nat member_fuel;         // fuel at which x's member query confirms b
    RefuteBelowWitness refutation;
};

/// Intrinsic apartness certificate: a NotNotBelowCert in one of the two
/// directions. `flipped` is false when the inner certificate runs (x, y)
/// in query order, true when it runs (y, x).
struct ApartCert {
    NotNotBelowCert inner;
    bool flipped = false;

    /// Symmetry constructor: a certificate for (x,y) is one for (y,x).
    ApartCert symmetric() const { return ApartCert{inner, !flipped}; }
};

/// Hausdorff separation certificate: basis approximants of the two elements
/// that cannot be refined, i.e. the basic opens above them are disjoint.
struct HausdorffCert {
    std::string left_label;
    std::string right_label;
    Code a;            // a way below the left element
    Nat a_member_fuel;
    Code b;            // b way below the right element
    Nat b_member_fuel; // nonrefine evidence is the descriptor decision !refine(a, b)
};

/// Answer of a sharpness oracle on a basis pair a < b: either a is way
/// below the element, or the principal ideal of b is refutably not below it.
struct SharpAnswer {
    bool way_below = false;
    Nat member_fuel = 0;                          // set when way_below
    std::optional<RefuteBelowWitness> refutation; // set otherwise
};

/// Total procedure answering every valid basis pair a < b. Totality is the
/// computational content of sharpness; an oracle that cannot answer must
/// throw OracleFailure, never return silently.
using SharpOracle = std::function<SharpAnswer(const Code& a, const Code& b)>;

/// Answer of a strong-maximality oracle on a basis pair u < v: either u is
/// way below the element, or v's principal ideal is Hausdorff separated
/// from it.
struct StrongMaxAnswer {
    bool way_below = false;
    Nat member_fuel = 0;
    std::optional<HausdorffCert> separation;
};

using StrongMaxOracle = std::function<StrongMaxAnswer(const Code& u, const Code& v)>;

} // namespace apartdomain

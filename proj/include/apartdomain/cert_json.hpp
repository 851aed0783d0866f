#pragma once

#include <string>

#include <json.hpp>

#include "apartdomain/certificates.hpp"

namespace apartdomain {

using Json = nlohmann::ordered_json;

// Certificate JSON schema:
//   {"kind": "apart"|"hausdorff"|"notnotbelow"|"refute",
//    "direction": [elemRef, elemRef],
//    "witness": code-string(s),
//    "replay_fuel": n,
//    "refutation": nested witness}
// Field names are stable; codes use the per-domain canonical serialization.

inline Json evidence_json(const RefuteEvidence& ev) {
    Json j;
    if (const auto* im = std::get_if<EvIncompatibleMember>(&ev)) {
        j["evidence"] = "incompatible-member";
        j["member"] = im->member.text;
        j["member_fuel"] = im->member_fuel;
    } else if (const auto* pa = std::get_if<EvNotPrecAnchor>(&ev)) {
        j["evidence"] = "not-prec-anchor";
        j["anchor"] = pa->anchor.text;
    } else if (const auto* dm = std::get_if<EvDecidedNonMember>(&ev)) {
        j["evidence"] = "decided-nonmember";
        j["query_fuel"] = dm->query_fuel;
    } else {
        j["evidence"] = "not-bottom";
    }
    return j;
}

inline Nat evidence_replay_fuel(const RefuteEvidence& ev) {
    if (const auto* im = std::get_if<EvIncompatibleMember>(&ev)) return im->member_fuel;
    if (const auto* dm = std::get_if<EvDecidedNonMember>(&ev)) return dm->query_fuel;
    return 0;
}

inline Json to_json(const RefuteBelowWitness& w, const std::string& target_label) {
    Json j;
    j["kind"] = "refute";
    j["direction"] = {"principal:" + w.refuted.text, target_label};
    j["witness"] = w.separator.text;
    j["replay_fuel"] = evidence_replay_fuel(w.evidence);
    j["refutation"] = evidence_json(w.evidence);
    return j;
}

inline Json to_json(const NotNotBelowCert& c) {
    Json j;
    j["kind"] = "notnotbelow";
    j["direction"] = {c.from_label, c.to_label};
    j["witness"] = c.witness.text;
    j["replay_fuel"] = c.member_fuel;
    j["refutation"] = to_json(c.refutation, c.to_label);
    return j;
}

inline Json to_json(const ApartCert& c) {
    Json j;
    j["kind"] = "apart";
    j["direction"] = {c.inner.from_label, c.inner.to_label};
    j["witness"] = c.inner.witness.text;
    j["replay_fuel"] = c.inner.member_fuel;
    j["refutation"] = to_json(c.inner.refutation, c.inner.to_label);
    return j;
}

inline Json to_json(const HausdorffCert& c) {
    Json j;
    j["kind"] = "hausdorff";
    j["direction"] = {c.left_label, c.right_label};
    j["witness"] = {c.a.text, c.b.text};
    j["replay_fuel"] = c.a_member_fuel > c.b_member_fuel ? c.a_member_fuel : c.b_member_fuel;
    j["refutation"] = Json{{"evidence", "not-refinable"}};
    return j;
}

inline Json to_json(const SharpAnswer& a, const std::string& elem_label) {
    Json j;
    if (a.way_below) {
        j["answer"] = "way-below";
        j["replay_fuel"] = a.member_fuel;
    } else {
        j["answer"] = "not-below";
        j["refutation"] = a.refutation ? to_json(*a.refutation, elem_label) : Json();
    }
    return j;
}

} // namespace apartdomain

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace apartdomain {

using Nat = std::uint32_t;

/// Three-valued outcome of a semi-decision. Unknown is a first-class answer:
/// it means the search budget ran out, never that the judgement is false.
enum class Tri { yes, no, unknown };

inline const char* to_cstring(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "unknown";
    }
}

/// Opaque basis code. Codes are compared by their canonical serialization,
/// which each domain fixes (see the per-domain descriptor factories).
struct Code {
    std::string text;

    friend bool operator==(const Code&, const Code&) = default;
    friend auto operator<=>(const Code&, const Code&) = default;
};

/// Search budget. Fuel counts enumeration indices, not wall-clock: every
/// search scans indices 0..budget inclusive. Any Yes/No answer produced at
/// fuel n is reproduced verbatim at every fuel m >= n; only Unknown may
/// change as fuel grows.
struct Fuel {
    Nat budget = 0;

    friend bool operator==(const Fuel&, const Fuel&) = default;
};

/// Dovetailed search over stages 0..fuel. Each stage must be a pure function
/// of its index (it may re-examine candidates from earlier stages with a
/// deeper inner budget). Returning the first firing stage makes answers and
/// witnesses stable under fuel growth: the firing stage does not depend on
/// the total budget.
template <typename F>
auto staged_search(Fuel fuel, F&& stage_fn) -> decltype(stage_fn(Nat{0})) {
    for (Nat t = 0; t <= fuel.budget; ++t) {
        if (auto r = stage_fn(t)) return r;
    }
    return {};
}

} // namespace apartdomain

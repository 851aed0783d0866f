#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "apartdomain/basis.hpp"
#include "apartdomain/core.hpp"
#include "apartdomain/errors.hpp"

namespace apartdomain::constructions {

// --- products ----------------------------------------------------------------

inline Code pair_code(const Code& a, const Code& b) {
    return Code{"(" + a.text + "|" + b.text + ")"};
}

inline std::optional<std::pair<Code, Code>> split_pair_code(const Code& c) {
    const std::string& s = c.text;
    if (s.size() < 3 || s.front() != '(' || s.back() != ')') return std::nullopt;
    const auto bar = s.find('|');
    if (bar == std::string::npos) return std::nullopt;
    return std::make_pair(Code{s.substr(1, bar - 1)}, Code{s.substr(bar + 1, s.size() - bar - 2)});
}

/// Product basis: pairs ordered componentwise, with every piece of
/// decidability data present exactly when both factors carry it.
inline DescriptorPtr product_descriptor(DescriptorPtr left, DescriptorPtr right) {
    auto d = std::make_shared<BasisDescriptor>();
    d->name = "product(" + left->name + "," + right->name + ")";
    d->reflexive = left->reflexive && right->reflexive;
    d->pointed = left->pointed && right->pointed;
    if (d->pointed && left->bottom_code && right->bottom_code)
        d->bottom_code = pair_code(*left->bottom_code, *right->bottom_code);

    d->valid = [left, right](const Code& c) {
        const auto p = split_pair_code(c);
        return p && (!left->valid || left->valid(p->first)) &&
               (!right->valid || right->valid(p->second));
    };
    auto lift2 = [left, right](auto getl, auto getr) {
        return [left, right, getl, getr](const Code& a, const Code& b) {
            const auto x = split_pair_code(a), y = split_pair_code(b);
            if (!x || !y) return false;
            return getl(*left)(x->first, y->first) && getr(*right)(x->second, y->second);
        };
    };
    auto precl = [](const BasisDescriptor& bd) { return bd.prec; };
    d->prec = lift2(precl, precl);
    d->enumerate = [left, right](Nat i) {
        auto [a, b] = unpair_index(i);
        return pair_code(left->enumerate(a), right->enumerate(b));
    };
    if (left->index_of && right->index_of)
        d->index_of = [left, right](const Code& c) -> std::optional<Nat> {
            const auto p = split_pair_code(c);
            if (!p) return std::nullopt;
            const auto a = left->index_of(p->first), b = right->index_of(p->second);
            if (!a || !b) return std::nullopt;
            return pair_index(*a, *b);
        };
    if (left->delta_bot && right->delta_bot)
        d->delta_bot = [left, right](const Code& c) {
            const auto p = split_pair_code(c);
            return p && left->delta_bot(p->first) && right->delta_bot(p->second);
        };
    if (left->delta_waybelow && right->delta_waybelow) {
        auto g = [](const BasisDescriptor& bd) { return bd.delta_waybelow; };
        d->delta_waybelow = lift2(g, g);
    }
    if (left->delta_below && right->delta_below) {
        auto g = [](const BasisDescriptor& bd) { return bd.delta_below; };
        d->delta_below = lift2(g, g);
    }
    if (left->refine && right->refine) {
        auto g = [](const BasisDescriptor& bd) { return bd.refine; };
        d->refine = lift2(g, g);
    }
    if (left->bounded_pair && right->bounded_pair) {
        auto g = [](const BasisDescriptor& bd) { return bd.bounded_pair; };
        d->bounded_pair = lift2(g, g);
    }
    if (left->interpolator && right->interpolator)
        d->interpolator = [left, right](const Code& a, const Code& b) {
            const auto x = split_pair_code(a), y = split_pair_code(b);
            if (!x || !y) throw InvalidCode(a.text + " / " + b.text);
            return pair_code(left->interpolator(x->first, y->first),
                             right->interpolator(x->second, y->second));
        };
    if (left->join2 && right->join2)
        d->join2 = [left, right](const Code& a, const Code& b) -> std::optional<Code> {
            const auto x = split_pair_code(a), y = split_pair_code(b);
            if (!x || !y) return std::nullopt;
            const auto l = left->join2(x->first, y->first);
            const auto r = right->join2(x->second, y->second);
            if (!l || !r) return std::nullopt;
            return pair_code(*l, *r);
        };
    return d;
}

// --- step functions -----------------------------------------------------------

/// Single-step function [source => target]: maps d to target when
/// source is below d, and to bottom otherwise.
struct SingleStep {
    Code source;
    Code target;

    friend bool operator==(const SingleStep&, const SingleStep&) = default;
    friend auto operator<=>(const SingleStep&, const SingleStep&) = default;
};

/// Bounded finite join of single-step functions in canonical form: steps
/// sorted by serialization, same-source steps merged, bottom targets and
/// dominated steps dropped.
struct StepFunction {
    std::vector<SingleStep> steps;

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (i) s += ", ";
            s += steps[i].source.text + "=>" + steps[i].target.text;
        }
        return s + "}";
    }

    friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

namespace detail {

inline void require_join_data(const BasisDescriptor& e) {
    if (!e.join2 || !e.bottom_code)
        throw MissingBoundednessData();
}

/// Least upper bound of a list of compacts in E, or nullopt when some fold
/// step is unbounded. Exact for bounded complete E.
inline std::optional<Code> join_all(const BasisDescriptor& e, const std::vector<Code>& codes) {
    require_join_data(e);
    Code acc = *e.bottom_code;
    for (const Code& c : codes) {
        const auto j = e.join2(acc, c);
        if (!j) return std::nullopt;
        acc = *j;
    }
    return acc;
}

} // namespace detail

/// Applies a bounded step function to a compact d of D: the join in E of the
/// targets of all steps whose source is below d.
inline Code apply(const BasisDescriptor& dD, const BasisDescriptor& dE, const StepFunction& s,
                  const Code& d) {
    if (!dD.delta_below) throw MissingDelta("delta_below on " + dD.name);
    detail::require_join_data(dE);
    std::vector<Code> targets;
    for (const SingleStep& st : s.steps)
        if (dD.delta_below(st.source, d)) targets.push_back(st.target);
    const auto j = detail::join_all(dE, targets);
    if (!j) throw UnboundedJoin("apply on unbounded step set " + s.str());
    return *j;
}

/// Decides S below T in the exponential: every step [a => b] of S must have
/// b below T applied to a.
inline bool step_below(const BasisDescriptor& dD, const BasisDescriptor& dE,
                       const StepFunction& s, const StepFunction& t) {
    if (!dE.delta_below) throw MissingDelta("delta_below on " + dE.name);
    for (const SingleStep& st : s.steps)
        if (!dE.delta_below(st.target, apply(dD, dE, t, st.source))) return false;
    return true;
}

/// Decides boundedness of a finite step set: every subset whose sources are
/// jointly bounded in D must have jointly consistent targets in E. Joint
/// boundedness is decided by join folding, exact on bounded complete posets;
/// subsets are enumerated in full because pairwise consistency does not
/// imply joint consistency.
inline bool bounded_steps(const BasisDescriptor& dD, const BasisDescriptor& dE,
                          const std::vector<SingleStep>& steps) {
    if (!dD.join2 || !dD.bottom_code) {
        if (!dD.bounded_pair) throw MissingBoundednessData();
    }
    detail::require_join_data(dE);
    if (steps.size() > 20) throw SizeTooLarge("step set too large for subset scan");
    const std::size_t total = std::size_t(1) << steps.size();
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::vector<Code> sources, targets;
        for (std::size_t i = 0; i < steps.size(); ++i)
            if ((mask >> i) & 1) {
                sources.push_back(steps[i].source);
                targets.push_back(steps[i].target);
            }
        bool sources_bounded;
        if (dD.join2 && dD.bottom_code) {
            sources_bounded = detail::join_all(dD, sources).has_value();
        } else {
            // no join data: fall back to the pairwise decision, valid for
            // tree-like bases where pairwise comparability is joint
            sources_bounded = true;
            for (std::size_t i = 0; i < sources.size() && sources_bounded; ++i)
                for (std::size_t j = i + 1; j < sources.size(); ++j)
                    if (!dD.bounded_pair(sources[i], sources[j])) {
                        sources_bounded = false;
                        break;
                    }
        }
        if (sources_bounded && !detail::join_all(dE, targets).has_value()) return false;
    }
    return true;
}

/// Canonical form: merge same-source steps (their targets must be
/// consistent), drop bottom targets and dominated steps, sort.
inline StepFunction canonical_step_function(const BasisDescriptor& dD, const BasisDescriptor& dE,
                                            std::vector<SingleStep> steps) {
    detail::require_join_data(dE);
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    // merge steps sharing a source
    std::vector<SingleStep> merged;
    for (const SingleStep& st : steps) {
        bool joined = false;
        for (SingleStep& m : merged)
            if (m.source == st.source) {
                const auto j = dE.join2(m.target, st.target);
                if (!j) throw UnboundedJoin("merging step targets at " + st.source.text);
                m.target = *j;
                joined = true;
                break;
            }
        if (!joined) merged.push_back(st);
    }
    // drop bottom targets
    if (dE.delta_bot)
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [&](const SingleStep& st) { return dE.delta_bot(st.target); }),
                     merged.end());
    // drop steps dominated by another step
    if (dD.delta_below && dE.delta_below) {
        std::vector<SingleStep> kept;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < merged.size() && !dominated; ++j) {
                if (i == j) continue;
                if (dD.delta_below(merged[j].source, merged[i].source) &&
                    dE.delta_below(merged[i].target, merged[j].target) &&
                    !(merged[i] == merged[j]))
                    dominated = true;
            }
            if (!dominated) kept.push_back(merged[i]);
        }
        merged = std::move(kept);
    }
    std::sort(merged.begin(), merged.end());
    return StepFunction{std::move(merged)};
}

/// Enumerates the compact basis of the exponential E^D at desk scale: all
/// bounded step sets over compact codes of enumeration index below the
/// bound, canonicalized and deduplicated up to order-equivalence.
inline std::vector<StepFunction> exp_basis_enumerate(const BasisDescriptor& dD,
                                                     const BasisDescriptor& dE, Nat size_bound) {
    if (!dD.reflexive || !dE.reflexive)
        throw PreconditionViolated("exponential basis needs algebraic factors");
    if (!dE.bottom_code) throw PreconditionViolated("exponential basis needs pointed E");
    if (!dD.delta_below || !dE.delta_below)
        throw PreconditionViolated("exponential basis needs delta_below on both factors");

    std::vector<Code> dcodes, ecodes;
    for (Nat i = 0; i < size_bound; ++i) {
        const Code c = dD.enumerate(i);
        if (std::find(dcodes.begin(), dcodes.end(), c) == dcodes.end()) dcodes.push_back(c);
        const Code e = dE.enumerate(i);
        if (std::find(ecodes.begin(), ecodes.end(), e) == ecodes.end()) ecodes.push_back(e);
    }
    std::vector<SingleStep> atoms;
    for (const Code& a : dcodes)
        for (const Code& b : ecodes) atoms.push_back({a, b});
    if (atoms.size() > 20) throw SizeTooLarge("single-step atom count");

    std::vector<StepFunction> classes;
    const std::size_t total = std::size_t(1) << atoms.size();
    for (std::size_t mask = 0; mask < total; ++mask) {
        std::vector<SingleStep> steps;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if ((mask >> i) & 1) steps.push_back(atoms[i]);
        if (!bounded_steps(dD, dE, steps)) continue;
        StepFunction canon = canonical_step_function(dD, dE, std::move(steps));
        bool known = false;
        for (const StepFunction& cls : classes)
            if (step_below(dD, dE, cls, canon) && step_below(dD, dE, canon, cls)) {
                known = true;
                break;
            }
        if (!known) classes.push_back(std::move(canon));
    }
    std::sort(classes.begin(), classes.end(),
              [](const StepFunction& a, const StepFunction& b) { return a.str() < b.str(); });
    return classes;
}

} // namespace apartdomain::constructions

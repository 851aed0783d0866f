#pragma once

#include <string>
#include <utility>
#include <vector>

#include "apartdomain/basis.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/finite_poset.hpp"

namespace apartdomain::domains {

using finite::FinitePoset;

/// The Sierpinski domain: free pointed dcpo on one generator.
inline FinitePoset sierpinski_poset() {
    return FinitePoset::from_relations({"bot", "top"}, {{"bot", "top"}});
}

inline std::string subset_label(unsigned bits) {
    std::string s = "{";
    bool first = true;
    for (unsigned i = 0; i < 8; ++i)
        if ((bits >> i) & 1) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
    return s + "}";
}

/// Powerset of {0..n-1} ordered by inclusion; compacts are all subsets.
inline FinitePoset powerset_poset(unsigned n) {
    if (n > 5) throw SizeTooLarge("powerset carrier bounded by 5");
    const unsigned total = 1u << n;
    std::vector<std::string> labels;
    for (unsigned b = 0; b < total; ++b) labels.push_back(subset_label(b));
    std::vector<std::pair<std::string, std::string>> rel;
    for (unsigned a = 0; a < total; ++a)
        for (unsigned b = 0; b < total; ++b)
            if ((a & ~b) == 0) rel.emplace_back(labels[a], labels[b]);
    return FinitePoset::from_relations(std::move(labels), rel);
}

/// The three-element poset bot <= 0, 1 with 0 and 1 unrelated; the stage for
/// the maximality-versus-strong-maximality study.
inline FinitePoset pee_poset() {
    return FinitePoset::from_relations({"bot", "0", "1"}, {{"bot", "0"}, {"bot", "1"}});
}

inline FinitePoset chain_poset(unsigned n) {
    std::vector<std::string> labels;
    for (unsigned i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> rel;
    for (unsigned i = 0; i + 1 < n; ++i) rel.emplace_back(labels[i], labels[i + 1]);
    return FinitePoset::from_relations(std::move(labels), rel);
}

/// n-element antichain with a least element adjoined.
inline FinitePoset antichain_lifted_poset(unsigned n) {
    std::vector<std::string> labels = {"bot"};
    std::vector<std::pair<std::string, std::string>> rel;
    for (unsigned i = 0; i < n; ++i) {
        labels.push_back("a" + std::to_string(i));
        rel.emplace_back("bot", labels.back());
    }
    return FinitePoset::from_relations(std::move(labels), rel);
}

inline FinitePoset diamond_poset() {
    return FinitePoset::from_relations({"bot", "a", "b", "top"},
                                       {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

struct FiniteDomainPair {
    FinitePoset poset;
    DescriptorPtr descriptor;
};

/// Builds the Sierpinski domain and the powerset of {0..n-1}, each wired
/// both to the finite oracle and to an algebraic basis descriptor with full
/// delta data.
inline std::pair<FiniteDomainPair, FiniteDomainPair> sierpinski_and_powerset(unsigned n) {
    if (n > 5) throw SizeTooLarge("powerset carrier bounded by 5");
    FinitePoset s = sierpinski_poset();
    FinitePoset p = powerset_poset(n);
    DescriptorPtr sd = finite::descriptor_from_poset(s, "sierpinski");
    DescriptorPtr pd = finite::descriptor_from_poset(p, "powerset" + std::to_string(n));
    return {{std::move(s), std::move(sd)}, {std::move(p), std::move(pd)}};
}

} // namespace apartdomain::domains

#pragma once

#include <optional>
#include <string>

#include "apartdomain/domains/finite_domains.hpp"
#include "apartdomain/domains/intervals.hpp"
#include "apartdomain/domains/lower_reals.hpp"
#include "apartdomain/domains/sequences.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/ideal.hpp"

namespace apartdomain::expr {

// Element expression grammar (case-sensitive, no whitespace):
//   rat:<p>/<q>                 interval domain, embedded rational
//   sqrt:<n>                    interval domain, sqrt of a non-square natural
//   seq:periodic:<word>         sequence domains
//   seq:evconst:<word>;<letter> sequence domains, eventually constant
//   lower:rat:<p>/<q>           lower reals
//   lower:sqrt:<n>              lower reals

inline DescriptorPtr descriptor_for_domain(const std::string& domain) {
    if (domain == "reals") return domains::interval_basis();
    if (domain == "cantor") return domains::cantor_basis();
    if (domain == "baire") return domains::baire_basis();
    if (domain == "lower") return domains::rational_basis();
    throw PreconditionViolated("unknown domain " + domain);
}

inline bool starts_with(const std::string& s, const std::string& prefix) {
    return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

inline std::optional<unsigned> parse_natural(const std::string& s) {
    if (s.empty()) return std::nullopt;
    unsigned v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

inline domains::Word parse_expr_word(const std::string& s, unsigned alphabet) {
    const auto w = domains::parse_word(Code{s}, alphabet);
    if (!w || w->empty()) throw PreconditionViolated("bad word in expression: " + s);
    return *w;
}

inline ApproxElement parse_element(const std::string& domain, const std::string& text) {
    if (domain == "reals") {
        if (starts_with(text, "rat:")) {
            const auto r = Rat::parse(text.substr(4));
            if (!r) throw PreconditionViolated("bad rational in " + text);
            return domains::iota_real(domains::rational_point(*r), text);
        }
        if (starts_with(text, "sqrt:")) {
            const auto n = parse_natural(text.substr(5));
            if (!n) throw PreconditionViolated("bad natural in " + text);
            return domains::iota_real(domains::sqrt_point(*n), text);
        }
        throw PreconditionViolated("expression " + text + " not valid for domain reals");
    }
    if (domain == "cantor" || domain == "baire") {
        const unsigned alphabet = domain == "cantor" ? 2u : 0u;
        const DescriptorPtr desc = expr::descriptor_for_domain(domain);
        if (starts_with(text, "seq:periodic:")) {
            return domains::iota_seq(
                desc, domains::periodic_point(parse_expr_word(text.substr(13), alphabet)), text);
        }
        if (starts_with(text, "seq:evconst:")) {
            const std::string rest = text.substr(12);
            const auto semi = rest.find(';');
            if (semi == std::string::npos)
                throw PreconditionViolated("evconst needs <word>;<letter> in " + text);
            const auto word = parse_expr_word(rest.substr(0, semi), alphabet);
            const auto letter = parse_natural(rest.substr(semi + 1));
            if (!letter || (alphabet != 0 && *letter >= alphabet))
                throw PreconditionViolated("bad letter in " + text);
            return domains::iota_seq(desc, domains::eventually_constant_point(word, *letter),
                                     text);
        }
        throw PreconditionViolated("expression " + text + " not valid for domain " + domain);
    }
    if (domain == "lower") {
        if (starts_with(text, "lower:rat:")) {
            const auto r = Rat::parse(text.substr(10));
            if (!r) throw PreconditionViolated("bad rational in " + text);
            return domains::lower_rat(*r);
        }
        if (starts_with(text, "lower:sqrt:")) {
            const auto n = parse_natural(text.substr(11));
            if (!n) throw PreconditionViolated("bad natural in " + text);
            return domains::lower_sqrt(*n);
        }
        throw PreconditionViolated("expression " + text + " not valid for domain lower");
    }
    throw PreconditionViolated("unknown domain " + domain);
}

inline Code parse_code(const std::string& domain, const std::string& text) {
    const DescriptorPtr desc = descriptor_for_domain(domain);
    Code c{text};
    if (desc->valid && !desc->valid(c)) throw InvalidCode(text + " in domain " + domain);
    return c;
}

/// Finite-domain selectors for exp-basis: sierpinski | powerset:<n> | pP.
inline DescriptorPtr finite_descriptor_for(const std::string& name) {
    if (name == "sierpinski")
        return finite::descriptor_from_poset(domains::sierpinski_poset(), "sierpinski");
    if (name == "pP") return finite::descriptor_from_poset(domains::pee_poset(), "pP");
    if (starts_with(name, "powerset:")) {
        const auto n = parse_natural(name.substr(9));
        if (!n) throw PreconditionViolated("bad powerset size in " + name);
        return finite::descriptor_from_poset(domains::powerset_poset(*n),
                                             "powerset" + std::to_string(*n));
    }
    throw PreconditionViolated("unknown finite domain " + name);
}

} // namespace apartdomain::expr

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "apartdomain/basis.hpp"
#include "apartdomain/certificates.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/ideal.hpp"
#include "apartdomain/separation.hpp"

namespace apartdomain::domains {

using Word = std::vector<unsigned>;

// Serialization: digit strings for alphabets up to 10 ("", "01", ...);
// dot-separated decimals for the Baire alphabet so prefix decoding stays
// unambiguous ("3.1.2").
inline Code word_code(const Word& w, unsigned alphabet) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (alphabet == 0 || alphabet > 10) {
            if (i) s += '.';
            s += std::to_string(w[i]);
        } else {
            s += static_cast<char>('0' + w[i]);
        }
    }
    return Code{s};
}

inline std::optional<Word> parse_word(const Code& c, unsigned alphabet) {
    Word w;
    const std::string& s = c.text;
    if (alphabet != 0 && alphabet <= 10) {
        for (char ch : s) {
            if (ch < '0' || ch > '9') return std::nullopt;
            const unsigned v = static_cast<unsigned>(ch - '0');
            if (v >= alphabet) return std::nullopt;
            w.push_back(v);
        }
        return w;
    }
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && s[j] != '.') ++j;
        if (j == i) return std::nullopt;  // empty segment
        unsigned v = 0;
        for (std::size_t k = i; k < j; ++k) {
            if (s[k] < '0' || s[k] > '9') return std::nullopt;
            v = v * 10 + static_cast<unsigned>(s[k] - '0');
        }
        w.push_back(v);
        if (j == s.size()) break;
        if (j + 1 == s.size()) return std::nullopt;  // trailing '.'
        i = j + 1;
    }
    return w;
}

inline bool is_prefix(const Word& a, const Word& b) {
    if (a.size() > b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

namespace detail_seq {

// Bijection between indices and finite words over a k-letter alphabet
// (bijective base-k numeration), and a pairing-based surjection for the
// Baire alphabet. Both keep length(enumerate(i)) <= i.
inline Word bounded_word_at(Nat i, unsigned k) {
    // lengths fill ranges of size k^L starting at (k^L - 1)/(k - 1)
    std::uint64_t base = 0, count = 1, len = 0;
    while (base + count <= i) {
        base += count;
        count *= k;
        ++len;
    }
    std::uint64_t off = i - base;
    Word w(len);
    for (std::size_t p = 0; p < len; ++p) {
        w[len - 1 - p] = static_cast<unsigned>(off % k);
        off /= k;
    }
    return w;
}

inline Nat bounded_word_index(const Word& w, unsigned k) {
    std::uint64_t base = 0, count = 1;
    for (std::size_t p = 0; p < w.size(); ++p) {
        base += count;
        count *= k;
    }
    std::uint64_t off = 0;
    for (unsigned v : w) off = off * k + v;
    return static_cast<Nat>(base + off);
}

inline Word baire_word_at(Nat i) {
    Word w;
    while (i > 0) {
        auto [a, r] = unpair_index(i - 1);
        w.push_back(a);
        i = r;
    }
    return w;
}

inline Nat baire_word_index(const Word& w) {
    Nat i = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) i = pair_index(*it, i) + 1;
    return i;
}

} // namespace detail_seq

/// Poset of finite sequences over a decidable alphabet under the prefix
/// order; its ideal completion is the Cantor domain (alphabet 2), the Baire
/// domain (alphabet 0, meaning the naturals), or a generalization.
inline DescriptorPtr seq_basis(unsigned alphabet) {
    static std::mutex mu;
    static std::map<unsigned, DescriptorPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(alphabet);
    if (it != cache.end()) return it->second;

    auto d = std::make_shared<BasisDescriptor>();
    d->name = alphabet == 0 ? "baire" : (alphabet == 2 ? "cantor" : "seq" + std::to_string(alphabet));
    d->reflexive = true;
    d->pointed = true;
    d->bottom_code = Code{""};
    d->valid = [alphabet](const Code& c) { return parse_word(c, alphabet).has_value(); };
    d->prec = [alphabet](const Code& a, const Code& b) {
        const auto x = parse_word(a, alphabet), y = parse_word(b, alphabet);
        return x && y && is_prefix(*x, *y);
    };
    d->enumerate = [alphabet](Nat i) {
        return word_code(alphabet == 0 ? detail_seq::baire_word_at(i)
                                       : detail_seq::bounded_word_at(i, alphabet),
                         alphabet);
    };
    d->index_of = [alphabet](const Code& c) -> std::optional<Nat> {
        const auto w = parse_word(c, alphabet);
        if (!w) return std::nullopt;
        return alphabet == 0 ? detail_seq::baire_word_index(*w)
                             : detail_seq::bounded_word_index(*w, alphabet);
    };
    d->delta_bot = [](const Code& c) { return c.text.empty(); };
    d->delta_waybelow = d->prec;
    d->delta_below = d->prec;
    d->refine = [alphabet](const Code& a, const Code& b) {
        const auto x = parse_word(a, alphabet), y = parse_word(b, alphabet);
        if (!x || !y) return false;
        return is_prefix(*x, *y) || is_prefix(*y, *x);
    };
    d->bounded_pair = d->refine;
    d->join2 = [alphabet](const Code& a, const Code& b) -> std::optional<Code> {
        const auto x = parse_word(a, alphabet), y = parse_word(b, alphabet);
        if (!x || !y) return std::nullopt;
        if (is_prefix(*x, *y)) return b;
        if (is_prefix(*y, *x)) return a;
        return std::nullopt;
    };
    cache.emplace(alphabet, d);
    return d;
}

inline DescriptorPtr cantor_basis() { return seq_basis(2); }
inline DescriptorPtr baire_basis() { return seq_basis(0); }

/// A point of the sequence space: a total stream of letters.
struct SeqPoint {
    std::function<unsigned(Nat)> stream;

    Word prefix(Nat n) const {
        Word w(n);
        for (Nat i = 0; i < n; ++i) w[i] = stream(i);
        return w;
    }
};

inline SeqPoint periodic_point(Word word) {
    if (word.empty()) throw PreconditionViolated("periodic word must be nonempty");
    return SeqPoint{[word = std::move(word)](Nat i) { return word[i % word.size()]; }};
}

inline SeqPoint eventually_constant_point(Word word, unsigned letter) {
    return SeqPoint{[word = std::move(word), letter](Nat i) {
        return i < word.size() ? word[i] : letter;
    }};
}

/// Native apartness on sequence points: the least prefix length below fuel
/// at which the two streams differ.
inline std::optional<Nat> seq_apart_native(const SeqPoint& p, const SeqPoint& q, Fuel fuel) {
    for (Nat n = 1; n <= fuel.budget; ++n)
        if (p.stream(n - 1) != q.stream(n - 1)) return n;
    return std::nullopt;
}

/// Embedding of a sequence point into the ideal completion. Membership is
/// the prefix decision; the strong-maximality oracle answers prefix queries
/// with the first-difference Hausdorff separation.
inline ApproxElement iota_seq(DescriptorPtr desc, const SeqPoint& pt, const std::string& label) {
    const unsigned alphabet = desc->name == "baire" ? 0u
                              : desc->name == "cantor"
                                  ? 2u
                                  : static_cast<unsigned>(std::stoul(desc->name.substr(3)));
    auto chain_fn = [pt, alphabet](Nat n) { return word_code(pt.prefix(n), alphabet); };
    ApproxElement base(desc, label, chain_fn);

    auto member_fn = [pt, alphabet](const Code& c) -> Tri {
        const auto w = parse_word(c, alphabet);
        if (!w) return Tri::no;
        for (std::size_t i = 0; i < w->size(); ++i)
            if ((*w)[i] != pt.stream(static_cast<Nat>(i))) return Tri::no;
        return Tri::yes;
    };
    base.with_member(member_fn, true);

    base.with_refuter([pt, alphabet](const Code& c, Fuel) -> std::optional<RefuteBelowWitness> {
        const auto w = parse_word(c, alphabet);
        if (!w) return std::nullopt;
        for (std::size_t i = 0; i < w->size(); ++i)
            if ((*w)[i] != pt.stream(static_cast<Nat>(i))) {
                const Code entry = word_code(pt.prefix(static_cast<Nat>(w->size())), alphabet);
                return RefuteBelowWitness{c, c, EvIncompatibleMember{entry, 0}};
            }
        return std::nullopt;
    });

    const std::string lbl = label;
    StrongMaxOracle sm = [pt, alphabet, member_fn, lbl](const Code& uc,
                                                        const Code& vc) -> StrongMaxAnswer {
        const auto u = parse_word(uc, alphabet);
        const auto v = parse_word(vc, alphabet);
        if (!u || !v || !is_prefix(*u, *v))
            throw OracleFailure("strongmax query requires words u prefix-below v");
        if (member_fn(uc) == Tri::yes) return {true, 0, std::nullopt};
        const Code entry = word_code(pt.prefix(static_cast<Nat>(u->size())), alphabet);
        // u and the equal-length prefix of the stream differ, so they are
        // not refinable; u is below v, the prefix is below the point.
        HausdorffCert h{"principal:" + vc.text, lbl, uc, 0, entry, 0};
        return {false, 0, std::move(h)};
    };
    base.with_sharp(derive_sharp(sm));
    base.with_strongmax(std::move(sm));
    return base;
}

} // namespace apartdomain::domains

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "apartdomain/basis.hpp"
#include "apartdomain/core.hpp"
#include "apartdomain/errors.hpp"

namespace apartdomain::finite {

using Mask = std::uint32_t;  // subsets of carriers up to 16 elements

/// Explicit finite poset: the classical ground truth. Everything below is
/// decided by exhaustive enumeration; all answers are exact.
class FinitePoset {
public:
    FinitePoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq)
        : labels_(std::move(labels)), leq_(std::move(leq)) {
        validate();
        build_masks();
    }

    /// Builds from relation pairs; the reflexive-transitive closure is
    /// computed first, then antisymmetry is validated.
    static FinitePoset from_relations(std::vector<std::string> labels,
                                      const std::vector<std::pair<std::string, std::string>>& rel) {
        const std::size_t n = labels.size();
        if (n == 0) throw InvalidPoset("empty carrier");
        if (n > 16) throw SizeTooLarge("finite poset carrier exceeds 16 elements");
        std::map<std::string, std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (!idx.emplace(labels[i], i).second)
                throw InvalidPoset("duplicate label " + labels[i]);
        }
        std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
        for (const auto& [a, b] : rel) {
            const auto ia = idx.find(a), ib = idx.find(b);
            if (ia == idx.end() || ib == idx.end())
                throw InvalidPoset("relation mentions unknown label " + a + " or " + b);
            leq[ia->second][ib->second] = true;
        }
        for (std::size_t k = 0; k < n; ++k)  // transitive closure
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[i][k] && leq[k][j]) leq[i][j] = true;
        return FinitePoset(std::move(labels), std::move(leq));
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    std::optional<std::size_t> index_of_label(const std::string& s) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == s) return i;
        return std::nullopt;
    }
    bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
    Mask up_set(std::size_t i) const { return up_[i]; }
    Mask down_set(std::size_t i) const { return down_[i]; }
    Mask full_mask() const { return size() == 32 ? ~Mask(0) : (Mask(1) << size()) - 1; }

    bool is_upper(Mask s) const {
        for (std::size_t i = 0; i < size(); ++i)
            if ((s >> i) & 1 && (up_[i] & ~s)) return false;
        return true;
    }
    bool is_lower(Mask s) const {
        for (std::size_t i = 0; i < size(); ++i)
            if ((s >> i) & 1 && (down_[i] & ~s)) return false;
        return true;
    }

    /// Directedness: inhabited and every two members share an upper bound
    /// inside the subset.
    bool is_directed(Mask s) const {
        if (!s) return false;
        for (std::size_t i = 0; i < size(); ++i) {
            if (!((s >> i) & 1)) continue;
            for (std::size_t j = 0; j < size(); ++j) {
                if (!((s >> j) & 1)) continue;
                if (!(up_[i] & up_[j] & s)) return false;
            }
        }
        return true;
    }

    /// A finite directed subset has a greatest element; that is its supremum.
    std::size_t directed_sup(Mask s) const {
        for (std::size_t i = 0; i < size(); ++i)
            if ((s >> i) & 1 && (s & ~down_[i]) == 0) return i;
        throw InvalidPoset("directed subset without greatest element");
    }

    std::optional<std::size_t> least_element() const {
        for (std::size_t i = 0; i < size(); ++i)
            if (up_[i] == full_mask()) return i;
        return std::nullopt;
    }

    /// Least upper bound of {i, j} when one exists.
    std::optional<std::size_t> join(std::size_t i, std::size_t j) const {
        const Mask uppers = up_[i] & up_[j];
        for (std::size_t k = 0; k < size(); ++k)
            if ((uppers >> k) & 1 && (uppers & ~up_[k]) == 0) return k;
        return std::nullopt;
    }

    std::string mask_string(Mask s) const {
        std::string out = "{";
        bool first = true;
        for (std::size_t i = 0; i < size(); ++i)
            if ((s >> i) & 1) {
                if (!first) out += ",";
                out += labels_[i];
                first = false;
            }
        return out + "}";
    }

private:
    void validate() const {
        const std::size_t n = labels_.size();
        if (n == 0) throw InvalidPoset("empty carrier");
        if (n > 16) throw SizeTooLarge("finite poset carrier exceeds 16 elements");
        for (std::size_t i = 0; i < n; ++i)
            if (!leq_[i][i]) throw InvalidPoset("order not reflexive at " + labels_[i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && leq_[i][j] && leq_[j][i])
                    throw InvalidPoset("order not antisymmetric on " + labels_[i] + "," + labels_[j]);
                for (std::size_t k = 0; k < n; ++k)
                    if (leq_[i][j] && leq_[j][k] && !leq_[i][k])
                        throw InvalidPoset("order not transitive via " + labels_[j]);
            }
    }

    void build_masks() {
        const std::size_t n = labels_.size();
        up_.assign(n, 0);
        down_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (leq_[i][j]) up_[i] |= Mask(1) << j;
                if (leq_[j][i]) down_[i] |= Mask(1) << j;
            }
    }

    std::vector<std::string> labels_;
    std::vector<std::vector<bool>> leq_;
    std::vector<Mask> up_;
    std::vector<Mask> down_;
};

/// All directed subsets together with their suprema.
inline std::vector<std::pair<Mask, std::size_t>> directed_subsets(const FinitePoset& p) {
    std::vector<std::pair<Mask, std::size_t>> out;
    for (Mask s = 1; s <= p.full_mask(); ++s)
        if (p.is_directed(s)) out.emplace_back(s, p.directed_sup(s));
    return out;
}

/// Scott opens, computed two independent ways and cross-checked: as upper
/// sets, and as upper sets inaccessible by directed suprema.
inline std::vector<Mask> scott_opens(const FinitePoset& p) {
    const auto directed = directed_subsets(p);
    std::vector<Mask> via_upper, via_inaccessible;
    for (Mask s = 0; s <= p.full_mask(); ++s) {
        if (!p.is_upper(s)) continue;
        via_upper.push_back(s);
        bool ok = true;
        for (const auto& [d, sup] : directed)
            if (((s >> sup) & 1) && !(d & s)) { ok = false; break; }
        if (ok) via_inaccessible.push_back(s);
    }
    if (via_upper != via_inaccessible)
        throw InvalidPoset("scott open computations disagree");  // impossible on valid posets
    return via_upper;
}

/// Way below by explicit quantification over directed subsets.
inline bool way_below_oracle(const FinitePoset& p, std::size_t x, std::size_t y) {
    for (const auto& [s, sup] : directed_subsets(p)) {
        if (!p.leq(y, sup)) continue;
        if (!(s & p.up_set(x))) return false;  // no member dominates x
    }
    return true;
}

struct ApartWitness {
    bool apart = false;
    Mask open = 0;
    bool contains_first = false;
};

/// First Scott open (in mask order) separating x from y, if any.
inline ApartWitness apart_oracle(const FinitePoset& p, std::size_t x, std::size_t y) {
    for (Mask u : scott_opens(p)) {
        const bool in_x = (u >> x) & 1, in_y = (u >> y) & 1;
        if (in_x && !in_y) return {true, u, true};
        if (in_y && !in_x) return {true, u, false};
    }
    return {};
}

struct SuiteCheck {
    std::string name;
    bool pass = true;
    std::string counterexample;
};

struct SuiteReport {
    std::vector<SuiteCheck> checks;
    std::vector<std::string> strongly_maximal;
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const SuiteCheck& c) { return c.pass; });
    }
};

namespace detail {

struct SuiteContext {
    const FinitePoset& p;
    std::size_t n;
    Mask full;
    std::vector<Mask> opens;
    std::vector<std::pair<Mask, std::size_t>> directed;
    std::vector<std::vector<bool>> wb;    // way below
    std::vector<std::vector<bool>> pnb;   // x not-not-below y (positively not below)
    std::vector<std::vector<bool>> apart;
    std::vector<std::vector<bool>> hsep;  // Hausdorff separated
    std::vector<std::vector<bool>> refi;  // refinable
    std::vector<Mask> min_open;           // least open neighbourhood of each point

    explicit SuiteContext(const FinitePoset& poset) : p(poset), n(poset.size()) {
        full = p.full_mask();
        opens = scott_opens(p);
        directed = directed_subsets(p);
        wb.assign(n, std::vector<bool>(n, true));
        for (const auto& [s, sup] : directed)
            for (std::size_t x = 0; x < n; ++x) {
                if (s & p.up_set(x)) continue;  // some member dominates x
                for (std::size_t y = 0; y < n; ++y)
                    if (p.leq(y, sup)) wb[x][y] = false;
            }
        pnb.assign(n, std::vector<bool>(n, false));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (Mask u : opens)
                    if (((u >> x) & 1) && !((u >> y) & 1)) { pnb[x][y] = true; break; }
        apart.assign(n, std::vector<bool>(n, false));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) apart[x][y] = pnb[x][y] || pnb[y][x];
        // the intersection of all opens containing x; itself open on a
        // finite poset, hence the least open neighbourhood
        min_open.assign(n, full);
        for (std::size_t x = 0; x < n; ++x)
            for (Mask u : opens)
                if ((u >> x) & 1) min_open[x] &= u;
        hsep.assign(n, std::vector<bool>(n, false));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                hsep[x][y] = (min_open[x] & min_open[y]) == 0;
        refi.assign(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t z = 0; z < n; ++z)
                    if (wb[a][z] && wb[b][z]) { refi[a][b] = true; break; }
    }

    Mask interior(Mask a) const {
        Mask out = 0;
        for (Mask u : opens)
            if ((u & ~a) == 0) out |= u;
        return out;
    }

    bool hausdorff_sep(std::size_t x, std::size_t y) const { return hsep[x][y]; }

    bool refinable(std::size_t a, std::size_t b) const { return refi[a][b]; }

    bool smyth_criterion(std::size_t v, std::size_t d) const {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (wb[a][v] && wb[b][d] && !refinable(a, b)) return true;
        return false;
    }

    bool sharp(std::size_t x) const {
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (wb[y][z] && !wb[y][x] && p.leq(z, x)) return false;
        return true;
    }

    bool strongly_maximal_def(std::size_t x) const {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (wb[u][v] && !wb[u][x] && !hausdorff_sep(v, x)) return false;
        return true;
    }

    bool smyth_maximal(std::size_t x) const {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                if (!wb[u][v]) continue;
                bool found = false;
                for (std::size_t d = 0; d < n && !found; ++d)
                    if (wb[d][x] && (wb[u][d] || smyth_criterion(v, d))) found = true;
                if (!found) return false;
            }
        return true;
    }

    bool maximal(std::size_t x) const {
        for (std::size_t y = 0; y < n; ++y)
            if (p.leq(x, y) && y != x) return false;
        return true;
    }

    Mask co_set(std::size_t z) const {  // {y | z not-not-below y}
        Mask out = 0;
        for (std::size_t y = 0; y < n; ++y)
            if (pnb[z][y]) out |= Mask(1) << y;
        return out;
    }

    /// Lawson neighbourhood condition on subbasics and their pairwise
    /// intersections: every Lawson neighbourhood of x contains a Scott open
    /// neighbourhood of x.
    bool lawson_condition(std::size_t x) const {
        std::vector<Mask> subbasics = opens;
        for (std::size_t z = 0; z < n; ++z) subbasics.push_back(co_set(z));
        auto contains_scott_nbhd = [&](Mask nbhd) {
            if (!((nbhd >> x) & 1)) return true;  // not a neighbourhood of x
            return (min_open[x] & ~nbhd) == 0;
        };
        for (Mask s : subbasics)
            if (!contains_scott_nbhd(s)) return false;
        for (Mask s : subbasics)
            for (Mask t : subbasics)
                if (!contains_scott_nbhd(s & t)) return false;
        return true;
    }
};

} // namespace detail

/// Exhaustive theorem suite on a finite poset: complements, interiors,
/// specialization, the apartness topology, sharpness, tightness and
/// cotransitivity, the three faces of strong maximality, the subspace
/// properties, basis density and located neighbourhood filters. All checks
/// are exact boolean set equalities.
inline SuiteReport theorem_suite(const FinitePoset& p, std::size_t max_size = 12) {
    if (p.size() > max_size) throw SizeTooLarge("theorem_suite poset larger than cap");
    detail::SuiteContext c(p);
    const std::size_t n = c.n;
    SuiteReport rep;
    auto check = [&rep](const std::string& name, bool pass, std::string cex = "") {
        rep.checks.push_back({name, pass, pass ? "" : std::move(cex)});
    };

    {  // (a) complement of each Scott open is Scott closed
        bool pass = true;
        std::string cex;
        for (Mask u : c.opens) {
            const Mask comp = c.full & ~u;
            if (!p.is_lower(comp)) { pass = false; cex = p.mask_string(u); break; }
            for (const auto& [s, sup] : c.directed)
                if ((s & ~comp) == 0 && !((comp >> sup) & 1)) {
                    pass = false;
                    cex = p.mask_string(u);
                    break;
                }
        }
        check("complement-of-open-is-closed", pass, cex);
    }
    {  // (b) interior of {x | x not below y} is {x | x positively not below y}
        bool pass = true;
        std::string cex;
        for (std::size_t y = 0; y < n && pass; ++y) {
            Mask notbelow = 0, positive = 0;
            for (std::size_t x = 0; x < n; ++x) {
                if (!p.leq(x, y)) notbelow |= Mask(1) << x;
                if (c.pnb[x][y]) positive |= Mask(1) << x;
            }
            if (c.interior(notbelow) != positive) { pass = false; cex = p.label(y); }
        }
        check("interior-of-complement", pass, cex);
    }
    {  // (c) specialization coincides with the order
        bool pass = true;
        std::string cex;
        for (std::size_t x = 0; x < n && pass; ++x)
            for (std::size_t y = 0; y < n && pass; ++y) {
                bool specializes = true;
                for (Mask u : c.opens)
                    if (((u >> x) & 1) && !((u >> y) & 1)) { specializes = false; break; }
                if (specializes != p.leq(x, y)) { pass = false; cex = p.label(x) + "," + p.label(y); }
            }
        check("order-specialization", pass, cex);
    }
    {  // (d) nearly open sets are exactly the Scott opens; interiors of the
       //     two complements agree
        bool pass = true;
        std::string cex;
        std::vector<Mask> nearly;
        for (Mask a = 0; a <= c.full && pass; ++a) {
            Mask tilde = 0;
            for (std::size_t x = 0; x < n; ++x) {
                bool all_apart = true;
                for (std::size_t yy = 0; yy < n; ++yy)
                    if (((a >> yy) & 1) && !c.apart[x][yy]) { all_apart = false; break; }
                if (all_apart) tilde |= Mask(1) << x;
            }
            const Mask minus = c.interior(tilde);
            nearly.push_back(minus);
            if (c.interior(c.full & ~a) != minus) {
                pass = false;
                cex = "interior mismatch on " + p.mask_string(a);
            }
        }
        if (pass) {
            std::sort(nearly.begin(), nearly.end());
            nearly.erase(std::unique(nearly.begin(), nearly.end()), nearly.end());
            std::vector<Mask> opens_sorted = c.opens;
            std::sort(opens_sorted.begin(), opens_sorted.end());
            if (nearly != opens_sorted) { pass = false; cex = "nearly-open family differs"; }
        }
        check("apartness-topology-is-scott", pass, cex);
    }
    {  // (e) every element is sharp; the algebraic criterion agrees
        bool pass = true;
        std::string cex;
        for (std::size_t x = 0; x < n && pass; ++x)
            if (!c.sharp(x)) { pass = false; cex = p.label(x); }
        check("em-sharp-and-sharp-algebraic", pass, cex);
    }
    {  // (f) apartness is tight and cotransitive (all elements sharp here)
        bool pass = true;
        std::string cex;
        for (std::size_t x = 0; x < n && pass; ++x)
            for (std::size_t y = 0; y < n && pass; ++y) {
                if (!c.pnb[x][y] && !p.leq(x, y)) { pass = false; cex = "tightness"; }
            }
        for (std::size_t x = 0; x < n && pass; ++x)
            for (std::size_t y = 0; y < n && pass; ++y)
                for (std::size_t z = 0; z < n && pass; ++z)
                    if (c.apart[x][y] && !c.apart[x][z] && !c.apart[y][z]) {
                        pass = false;
                        cex = "cotransitivity";
                    }
        check("sharp-tight-cotransitive", pass, cex);
    }
    std::vector<bool> sm(n);
    {  // (g) strong maximality = Smyth maximality = Lawson condition
        bool pass = true;
        std::string cex;
        for (std::size_t x = 0; x < n; ++x) sm[x] = c.strongly_maximal_def(x);
        for (std::size_t x = 0; x < n && pass; ++x) {
            const bool smy = c.smyth_maximal(x);
            const bool law = c.sharp(x) && c.lawson_condition(x);
            if (sm[x] != smy || sm[x] != law) {
                pass = false;
                cex = p.label(x) + (sm[x] != smy ? " smyth" : " lawson");
            }
        }
        check("strongmax-smyth-lawson-equivalence", pass, cex);
    }
    {  // (h) strongly maximal implies maximal and sharp
        bool pass = true;
        std::string cex;
        for (std::size_t x = 0; x < n && pass; ++x)
            if (sm[x] && (!c.maximal(x) || !c.sharp(x))) { pass = false; cex = p.label(x); }
        check("strongmax-implies-maximal-and-sharp", pass, cex);
    }
    {  // (i) apart and below implies classically strictly below
        bool pass = true;
        std::string cex;
        for (std::size_t x = 0; x < n && pass; ++x)
            for (std::size_t y = 0; y < n && pass; ++y)
                if (c.apart[x][y] && p.leq(x, y) && !(p.leq(x, y) && x != y)) {
                    pass = false;
                    cex = p.label(x) + "," + p.label(y);
                }
        check("apart-implies-strictly-below", pass, cex);
    }
    {  // (j) basis density: every inhabited Scott open meets the basis
        bool pass = true;
        std::string cex;
        for (Mask u : c.opens)
            if (u && !(u & c.full)) { pass = false; cex = p.mask_string(u); }
        check("basis-is-dense", pass, cex);
    }
    {  // (k) sharp iff the open neighbourhood filter is located (way below
       //     in the finite lattice of opens is inclusion)
        bool pass = true;
        std::string cex;
        for (std::size_t x = 0; x < n && pass; ++x) {
            bool located = true;
            for (Mask u : c.opens) {
                for (Mask v : c.opens) {
                    if ((u & ~v) != 0) continue;  // u below v only
                    const bool v_in = (v >> x) & 1, u_in = (u >> x) & 1;
                    if (!v_in && u_in) { located = false; break; }
                }
                if (!located) break;
            }
            if (located != c.sharp(x)) { pass = false; cex = p.label(x); }
        }
        check("sharp-iff-located-nbhd-filter", pass, cex);
    }
    {  // (l) the subspace of strongly maximal elements is Hausdorff and regular
        bool pass = true;
        std::string cex;
        Mask smmask = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (sm[i]) smmask |= Mask(1) << i;
        for (std::size_t x = 0; x < n && pass; ++x)
            for (std::size_t y = 0; y < n && pass; ++y) {
                if (!sm[x] || !sm[y]) continue;
                if (c.apart[x][y] != c.hausdorff_sep(x, y)) {
                    pass = false;
                    cex = "hausdorff " + p.label(x) + "," + p.label(y);
                }
            }
        auto down_closure = [&](Mask s) {
            Mask out = 0;
            for (std::size_t i = 0; i < n; ++i)
                if ((s >> i) & 1) out |= p.down_set(i);
            return out;
        };
        for (std::size_t x = 0; x < n && pass; ++x) {
            if (!sm[x]) continue;
            for (Mask u : c.opens) {
                if (!((u >> x) & 1)) continue;
                // the smallest admissible closed set for a candidate V is the
                // down closure of V's strongly maximal part
                bool found = false;
                for (Mask v : c.opens) {
                    if (!((v >> x) & 1)) continue;
                    const Mask closed = down_closure(v & smmask);
                    if ((closed & smmask & ~u) == 0) { found = true; break; }
                }
                if (!found) {
                    pass = false;
                    cex = "regular " + p.label(x) + " in " + p.mask_string(u);
                    break;
                }
            }
        }
        check("strongmax-subspace-hausdorff-regular", pass, cex);
    }

    for (std::size_t x = 0; x < n; ++x)
        if (sm[x]) rep.strongly_maximal.push_back(p.label(x));
    return rep;
}

/// Agreement of the two way-below computations: the explicit directed-subset
/// quantification and the finite-poset shortcut (order itself).
inline bool way_below_matches_order(const FinitePoset& p) {
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = 0; y < p.size(); ++y)
            if (way_below_oracle(p, x, y) != p.leq(x, y)) return false;
    return true;
}

/// All monotone maps from D to E, each as a vector of E-indices.
inline std::vector<std::vector<std::size_t>> monotone_maps(const FinitePoset& d,
                                                           const FinitePoset& e) {
    double total = 1;
    for (std::size_t i = 0; i < d.size(); ++i) total *= static_cast<double>(e.size());
    if (total > 1e7) throw SizeTooLarge("monotone map enumeration");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> f(d.size(), 0);
    while (true) {
        bool mono = true;
        for (std::size_t i = 0; i < d.size() && mono; ++i)
            for (std::size_t j = 0; j < d.size() && mono; ++j)
                if (d.leq(i, j) && !e.leq(f[i], f[j])) mono = false;
        if (mono) out.push_back(f);
        std::size_t k = 0;
        while (k < f.size() && ++f[k] == e.size()) f[k++] = 0;
        if (k == f.size()) break;
    }
    return out;
}

/// Views a finite poset as a reflexive abstract basis: its ideal completion
/// is the poset itself, with every element compact and full delta data.
inline DescriptorPtr descriptor_from_poset(const FinitePoset& p, const std::string& name) {
    auto poset = std::make_shared<FinitePoset>(p);
    auto d = std::make_shared<BasisDescriptor>();
    d->name = name;
    d->reflexive = true;
    const auto least = poset->least_element();
    d->pointed = least.has_value();
    if (least) d->bottom_code = Code{poset->label(*least)};
    d->valid = [poset](const Code& c) { return poset->index_of_label(c.text).has_value(); };
    auto need = [poset](const Code& c) {
        const auto i = poset->index_of_label(c.text);
        if (!i) throw InvalidCode(c.text);
        return *i;
    };
    d->prec = [poset, need](const Code& a, const Code& b) {
        return poset->leq(need(a), need(b));
    };
    d->enumerate = [poset](Nat i) {
        return Code{poset->label(i % poset->size())};
    };
    d->index_of = [poset](const Code& c) -> std::optional<Nat> {
        const auto i = poset->index_of_label(c.text);
        if (!i) return std::nullopt;
        return static_cast<Nat>(*i);
    };
    d->delta_bot = [poset, need](const Code& c) {
        const auto least = poset->least_element();
        return least && need(c) == *least;
    };
    d->delta_waybelow = d->prec;
    d->delta_below = d->prec;
    d->refine = [poset, need](const Code& a, const Code& b) {
        return (poset->up_set(need(a)) & poset->up_set(need(b))) != 0;
    };
    d->bounded_pair = d->refine;
    d->join2 = [poset, need](const Code& a, const Code& b) -> std::optional<Code> {
        const auto j = poset->join(need(a), need(b));
        if (!j) return std::nullopt;
        return Code{poset->label(*j)};
    };
    return d;
}

// --- JSON I/O ---------------------------------------------------------------
// Schema: {"elements": ["a","b",...], "leq": [["a","b"],...]}; reflexive
// pairs are optional, the closure is computed and then validated.

inline FinitePoset poset_from_json(const nlohmann::json& j) {
    if (!j.contains("elements") || !j["elements"].is_array())
        throw InvalidPoset("json poset needs an 'elements' array");
    std::vector<std::string> labels;
    for (const auto& e : j["elements"]) labels.push_back(e.get<std::string>());
    std::vector<std::pair<std::string, std::string>> rel;
    if (j.contains("leq")) {
        for (const auto& pr : j["leq"]) {
            if (!pr.is_array() || pr.size() != 2) throw InvalidPoset("bad leq pair");
            rel.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
        }
    }
    return FinitePoset::from_relations(std::move(labels), rel);
}

/// Random poset: a random DAG on a shuffled topological order, closed.
inline FinitePoset random_poset(std::mt19937& rng, std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> rel;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng) < 0.3) rel.emplace_back(labels[i], labels[j]);
    return FinitePoset::from_relations(std::move(labels), rel);
}

} // namespace apartdomain::finite

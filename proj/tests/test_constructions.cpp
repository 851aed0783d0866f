#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "apartdomain/constructions.hpp"
#include "apartdomain/domains/finite_domains.hpp"
#include "apartdomain/domains/intervals.hpp"
#include "apartdomain/domains/sequences.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/finite_poset.hpp"

namespace ad = apartdomain;
namespace cons = apartdomain::constructions;
namespace dom = apartdomain::domains;
namespace fin = apartdomain::finite;
using ad::Code;
using cons::SingleStep;
using cons::StepFunction;

namespace {

struct Finite {
    fin::FinitePoset poset;
    ad::DescriptorPtr desc;
};

Finite sierp() {
    auto p = dom::sierpinski_poset();
    auto d = fin::descriptor_from_poset(p, "sierpinski");
    return {std::move(p), std::move(d)};
}

Finite pow(unsigned n) {
    auto p = dom::powerset_poset(n);
    auto d = fin::descriptor_from_poset(p, "powerset" + std::to_string(n));
    return {std::move(p), std::move(d)};
}

} // namespace

TEST_CASE("product descriptor transports order and decidability componentwise") {
    const auto s = sierp();
    const auto c = dom::cantor_basis();
    const auto prod = cons::product_descriptor(s.desc, c);
    CHECK(prod->reflexive);
    CHECK(prod->pointed);
    REQUIRE(prod->bottom_code.has_value());
    CHECK(prod->bottom_code->text == "(bot|)");
    CHECK(prod->prec(Code{"(bot|0)"}, Code{"(top|01)"}));
    CHECK(!prod->prec(Code{"(top|0)"}, Code{"(bot|01)"}));
    CHECK(prod->delta_bot(Code{"(bot|)"}));
    CHECK(!prod->delta_bot(Code{"(bot|0)"}));
    REQUIRE(prod->delta_below);
    REQUIRE(prod->delta_waybelow);
    REQUIRE(prod->refine);
    CHECK(prod->refine(Code{"(bot|0)"}, Code{"(top|01)"}));
    CHECK(!prod->refine(Code{"(bot|0)"}, Code{"(bot|1)"}));
    for (ad::Nat i = 0; i < 64; ++i) {
        const Code pc = prod->enumerate(i);
        REQUIRE(prod->valid(pc));
        const auto idx = prod->index_of(pc);
        REQUIRE(idx.has_value());
        CHECK(prod->enumerate(*idx) == pc);
    }
}

TEST_CASE("product of non-reflexive bases interpolates componentwise") {
    const auto iv = dom::interval_basis();
    const auto prod = cons::product_descriptor(iv, iv);
    CHECK(!prod->reflexive);
    CHECK(!prod->pointed);
    CHECK(!prod->delta_bot);  // delta data present only when both factors carry it
    CHECK(!prod->join2);
    const Code a{"((0/1,1/1)|(0/1,1/1))"}, b{"((1/4,3/4)|(1/4,3/4))"};
    REQUIRE(prod->prec(a, b));
    const Code mid = prod->interpolator(a, b);
    CHECK(mid.text == "((1/8,7/8)|(1/8,7/8))");
    CHECK(prod->prec(a, mid));
    CHECK(prod->prec(mid, b));
}

TEST_CASE("apply on the Sierpinski exponential") {
    const auto s = sierp();
    const StepFunction id{{SingleStep{Code{"top"}, Code{"top"}}}};
    CHECK(cons::apply(*s.desc, *s.desc, id, Code{"bot"}).text == "bot");
    CHECK(cons::apply(*s.desc, *s.desc, id, Code{"top"}).text == "top");
    const StepFunction empty{};
    CHECK(cons::apply(*s.desc, *s.desc, empty, Code{"bot"}).text == "bot");
    CHECK(cons::apply(*s.desc, *s.desc, empty, Code{"top"}).text == "bot");
}

TEST_CASE("apply joins all applicable targets in the codomain") {
    const auto s = sierp();
    const auto p2 = pow(2);
    const StepFunction f{{SingleStep{Code{"bot"}, Code{"{0}"}},
                          SingleStep{Code{"top"}, Code{"{1}"}}}};
    CHECK(cons::apply(*s.desc, *p2.desc, f, Code{"top"}).text == "{0,1}");
    CHECK(cons::apply(*s.desc, *p2.desc, f, Code{"bot"}).text == "{0}");
}

TEST_CASE("apply reports an unbounded join") {
    const auto c = dom::cantor_basis();
    const StepFunction clash{{SingleStep{Code{""}, Code{"0"}}, SingleStep{Code{""}, Code{"1"}}}};
    CHECK_THROWS_AS(cons::apply(*c, *c, clash, Code{"0"}), ad::UnboundedJoin);
}

TEST_CASE("step_below on the Sierpinski exponential") {
    const auto s = sierp();
    const StepFunction id{{SingleStep{Code{"top"}, Code{"top"}}}};
    const StepFunction const_top{{SingleStep{Code{"bot"}, Code{"top"}}}};
    CHECK(cons::step_below(*s.desc, *s.desc, id, const_top));
    CHECK(!cons::step_below(*s.desc, *s.desc, const_top, id));
    CHECK(cons::step_below(*s.desc, *s.desc, id, id));
}

TEST_CASE("bounded_steps scans subsets, not just pairs") {
    const auto s = sierp();
    const auto c = dom::cantor_basis();
    CHECK(cons::bounded_steps(*s.desc, *s.desc, {SingleStep{Code{"top"}, Code{"top"}}}));
    CHECK(!cons::bounded_steps(*c, *c,
                               {SingleStep{Code{"0"}, Code{"0"}}, SingleStep{Code{"0"}, Code{"1"}}}));
    CHECK(cons::bounded_steps(*c, *c,
                              {SingleStep{Code{"0"}, Code{"0"}}, SingleStep{Code{"1"}, Code{"1"}}}));
}

TEST_CASE("bounded_steps needs join data on the codomain") {
    const auto iv = dom::interval_basis();
    const auto s = sierp();
    CHECK_THROWS_AS(cons::bounded_steps(*s.desc, *iv, {SingleStep{Code{"top"}, Code{"(0/1,1/1)"}}}),
                    ad::MissingBoundednessData);
}

namespace {

/// Table of a step function on the carrier of a finite domain.
std::vector<std::string> function_table(const Finite& d, const Finite& e, const StepFunction& s) {
    std::vector<std::string> t;
    for (std::size_t i = 0; i < d.poset.size(); ++i)
        t.push_back(cons::apply(*d.desc, *e.desc, s, Code{d.poset.label(i)}).text);
    return t;
}

void check_exponential_matches_oracle(const Finite& d, const Finite& e) {
    const ad::Nat bound = static_cast<ad::Nat>(std::max(d.poset.size(), e.poset.size()));
    const auto classes = cons::exp_basis_enumerate(*d.desc, *e.desc, bound);
    const auto maps = fin::monotone_maps(d.poset, e.poset);
    CHECK(classes.size() == maps.size());

    // the induced tables are exactly the monotone maps, without repetition
    std::set<std::vector<std::string>> tables;
    for (const auto& cls : classes) tables.insert(function_table(d, e, cls));
    CHECK(tables.size() == classes.size());
    std::set<std::vector<std::string>> expected;
    for (const auto& f : maps) {
        std::vector<std::string> t;
        for (std::size_t i = 0; i < d.poset.size(); ++i) t.push_back(e.poset.label(f[i]));
        expected.insert(t);
    }
    CHECK(tables == expected);

    // step_below agrees with pointwise comparison on every class pair
    for (const auto& a : classes)
        for (const auto& b : classes) {
            const auto ta = function_table(d, e, a), tb = function_table(d, e, b);
            bool pointwise = true;
            for (std::size_t i = 0; i < ta.size(); ++i) {
                const auto ia = e.poset.index_of_label(ta[i]), ib = e.poset.index_of_label(tb[i]);
                if (!e.poset.leq(*ia, *ib)) { pointwise = false; break; }
            }
            CHECK(cons::step_below(*d.desc, *e.desc, a, b) == pointwise);
        }
}

} // namespace

TEST_CASE("exponential basis matches brute-forced monotone maps") {
    check_exponential_matches_oracle(sierp(), sierp());      // 3 classes
    check_exponential_matches_oracle(sierp(), pow(1));       // 3 classes
    check_exponential_matches_oracle(pow(1), pow(1));        // 3 classes
    check_exponential_matches_oracle(sierp(), pow(2));       // 9 classes
    const auto s = sierp();
    CHECK(cons::exp_basis_enumerate(*s.desc, *s.desc, 2).size() == 3);
}

TEST_CASE("the empty step function is the least class and the derived bottom") {
    const auto s = sierp();
    const auto classes = cons::exp_basis_enumerate(*s.desc, *s.desc, 2);
    bool found_empty = false;
    for (const auto& cls : classes) {
        if (cls.steps.empty()) found_empty = true;
        CHECK(cons::step_below(*s.desc, *s.desc, StepFunction{}, cls));
    }
    CHECK(found_empty);
}

TEST_CASE("enumerated classes are compact in the finite exponential") {
    const auto d = sierp();
    const auto e = pow(1);
    const auto classes = cons::exp_basis_enumerate(*d.desc, *e.desc, 2);
    std::vector<std::string> labels;
    for (const auto& c : classes) labels.push_back(c.str());
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = 0; j < classes.size(); ++j)
            if (cons::step_below(*d.desc, *e.desc, classes[i], classes[j]))
                rel.emplace_back(labels[i], labels[j]);
    const auto expo = fin::FinitePoset::from_relations(labels, rel);
    for (std::size_t i = 0; i < expo.size(); ++i) CHECK(fin::way_below_oracle(expo, i, i));
    CHECK(fin::way_below_matches_order(expo));
}

TEST_CASE("apply respects step_below pointwise") {
    const auto d = sierp();
    const auto e = pow(2);
    const auto classes = cons::exp_basis_enumerate(*d.desc, *e.desc, 4);
    for (const auto& a : classes)
        for (const auto& b : classes) {
            if (!cons::step_below(*d.desc, *e.desc, a, b)) continue;
            for (std::size_t i = 0; i < d.poset.size(); ++i) {
                const Code da{d.poset.label(i)};
                const auto fa = cons::apply(*d.desc, *e.desc, a, da);
                const auto fb = cons::apply(*d.desc, *e.desc, b, da);
                CHECK(e.desc->delta_below(fa, fb));
            }
        }
}

TEST_CASE("step_below is a preorder on the enumerated classes") {
    const auto d = sierp();
    const auto e = pow(2);
    const auto classes = cons::exp_basis_enumerate(*d.desc, *e.desc, 4);
    for (const auto& a : classes) CHECK(cons::step_below(*d.desc, *e.desc, a, a));
    for (const auto& a : classes)
        for (const auto& b : classes)
            for (const auto& c : classes)
                if (cons::step_below(*d.desc, *e.desc, a, b) &&
                    cons::step_below(*d.desc, *e.desc, b, c))
                    CHECK(cons::step_below(*d.desc, *e.desc, a, c));
}

TEST_CASE("canonical form merges sources, drops bottoms and dominated steps") {
    const auto s = sierp();
    const auto p2 = pow(2);
    const auto canon = cons::canonical_step_function(
        *s.desc, *p2.desc,
        {SingleStep{Code{"bot"}, Code{"{0}"}}, SingleStep{Code{"bot"}, Code{"{1}"}},
         SingleStep{Code{"top"}, Code{"{}"}}, SingleStep{Code{"top"}, Code{"{0}"}}});
    CHECK(canon.str() == "{bot=>{0,1}}");
    const auto classes = cons::exp_basis_enumerate(*s.desc, *s.desc, 2);
    CHECK(std::count_if(classes.begin(), classes.end(),
                        [](const StepFunction& f) { return f.steps.empty(); }) == 1);
}

TEST_CASE("exp_basis_enumerate validates its preconditions") {
    const auto iv = dom::interval_basis();
    const auto s = sierp();
    CHECK_THROWS_AS(cons::exp_basis_enumerate(*iv, *s.desc, 2), ad::PreconditionViolated);
    CHECK_THROWS_AS(cons::exp_basis_enumerate(*dom::cantor_basis(), *s.desc, 40),
                    ad::SizeTooLarge);
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "apartdomain/cert_json.hpp"
#include "apartdomain/domains/finite_domains.hpp"
#include "apartdomain/domains/intervals.hpp"
#include "apartdomain/domains/lower_reals.hpp"
#include "apartdomain/domains/sequences.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/separation.hpp"

namespace ad = apartdomain;
namespace dom = apartdomain::domains;
using ad::Code;
using ad::Fuel;
using ad::Tri;

namespace {

ad::ApproxElement iota_rat(long long num, long long den, unsigned base = 2) {
    const ad::Rat r(num, den);
    return dom::iota_real(dom::rational_point(r, base), "rat:" + r.str());
}

ad::ApproxElement cantor_point(std::vector<unsigned> word, bool periodic = true) {
    std::string name = periodic ? "seq:periodic:" : "seq:evconst:";
    for (unsigned v : word) name += static_cast<char>('0' + v);
    return dom::iota_seq(dom::cantor_basis(),
                         periodic ? dom::periodic_point(word)
                                  : dom::eventually_constant_point(word, 0),
                         name);
}

} // namespace

TEST_CASE("not_not_below separates embedded rationals with the expected witness") {
    const auto one = iota_rat(1, 1);
    const auto zero = iota_rat(0, 1);
    const auto cert = ad::not_not_below(one, zero, Fuel{8});
    REQUIRE(cert.has_value());
    CHECK(cert->witness.text == "(1/2,3/2)");
    CHECK(ad::replay_not_not_below(*cert, one, zero));
}

TEST_CASE("not_not_below never fires on an element against itself") {
    const auto one = iota_rat(1, 1);
    for (ad::Nat f : {1u, 8u, 32u}) CHECK(!ad::not_not_below(one, one, Fuel{f}));
    const auto zeros = cantor_point({0});
    for (ad::Nat f : {1u, 8u, 32u}) CHECK(!ad::not_not_below(zeros, zeros, Fuel{f}));
}

TEST_CASE("not_not_below on the Cantor domain finds the first differing prefix") {
    const auto x = dom::iota_seq(dom::cantor_basis(),
                                 dom::eventually_constant_point({0, 0, 1}, 0), "x:001000...");
    const auto y = cantor_point({0});
    const auto cert = ad::not_not_below(x, y, Fuel{16});
    REQUIRE(cert.has_value());
    CHECK(cert->witness.text == "001");
    CHECK(ad::replay_not_not_below(*cert, x, y));
}

TEST_CASE("intrinsic_apart on the powerset: inhabited sets are apart from empty") {
    const auto pw = dom::sierpinski_and_powerset(3).second.descriptor;
    const auto x = ad::principal(pw, Code{"{0}"});
    const auto empty = ad::principal(pw, Code{"{}"});
    const auto cert = ad::intrinsic_apart(x, empty, Fuel{8});
    REQUIRE(cert.has_value());
    CHECK(!cert->flipped);  // the inhabited side carries the witness
    CHECK(ad::replay_apart(*cert, x, empty));
}

TEST_CASE("intrinsic_apart separates bottom and top of the Sierpinski domain") {
    const auto sd = dom::sierpinski_and_powerset(1).first.descriptor;
    const auto bot = ad::principal(sd, Code{"bot"});
    const auto top = ad::principal(sd, Code{"top"});
    const auto cert = ad::intrinsic_apart(bot, top, Fuel{4});
    REQUIRE(cert.has_value());
    CHECK(cert->flipped);  // witnessed through the open above top
    CHECK(cert->inner.witness.text == "top");
    CHECK(ad::replay_apart(*cert, bot, top));
}

TEST_CASE("intrinsic_apart separates sqrt(2) from 3/2 with an interval witness") {
    const auto root2 = dom::iota_real(dom::sqrt_point(2), "sqrt:2");
    const auto threehalves = iota_rat(3, 2);
    const auto cert = ad::intrinsic_apart(root2, threehalves, Fuel{64});
    REQUIRE(cert.has_value());
    CHECK(ad::replay_apart(*cert, root2, threehalves));
}

TEST_CASE("certificate symmetry constructor swaps the query order") {
    const auto root2 = dom::iota_real(dom::sqrt_point(2), "sqrt:2");
    const auto threehalves = iota_rat(3, 2);
    const auto cert = ad::intrinsic_apart(root2, threehalves, Fuel{64});
    REQUIRE(cert.has_value());
    CHECK(ad::replay_apart(cert->symmetric(), threehalves, root2));
}

TEST_CASE("apartness witness distinguishes the members of the two elements") {
    const auto x = cantor_point({0, 1});
    const auto y = cantor_point({1, 0});
    const auto cert = ad::intrinsic_apart(x, y, Fuel{16});
    REQUIRE(cert.has_value());
    const ad::ApproxElement& from = cert->flipped ? y : x;
    const ad::ApproxElement& to = cert->flipped ? x : y;
    CHECK(from.member(cert->inner.witness, Fuel{cert->inner.member_fuel}).verdict == Tri::yes);
    CHECK(to.member(cert->inner.witness, Fuel{64}).verdict != Tri::yes);
}

TEST_CASE("apart_from_bottom on a principal lower real fires immediately") {
    const auto down_zero = ad::principal(dom::rational_basis(), Code{"0/1"});
    const auto cert = ad::apart_from_bottom(down_zero, Fuel{1});
    REQUIRE(cert.has_value());
    CHECK(ad::replay_apart_from_bottom(*cert, down_zero));
}

TEST_CASE("apart_from_bottom never fires on bottom itself") {
    const auto pw = dom::sierpinski_and_powerset(1).second.descriptor;
    const auto empty = ad::principal(pw, Code{"{}"});
    for (ad::Nat f : {1u, 8u, 32u}) CHECK(!ad::apart_from_bottom(empty, Fuel{f}));
}

TEST_CASE("apart_from_bottom on the powerset of a singleton") {
    const auto pw = dom::sierpinski_and_powerset(1).second.descriptor;
    const auto x = ad::principal(pw, Code{"{0}"});
    const auto cert = ad::apart_from_bottom(x, Fuel{4});
    REQUIRE(cert.has_value());
    CHECK(cert->inner.witness.text == "{0}");
    CHECK(ad::replay_apart_from_bottom(*cert, x));
}

TEST_CASE("apart_from_bottom demands delta_bot") {
    const auto one = iota_rat(1, 1);
    CHECK_THROWS_AS(ad::apart_from_bottom(one, Fuel{4}), ad::MissingDeltaBot);
}

TEST_CASE("cotransit on the interval domain produces a replayable certificate") {
    const auto x = iota_rat(0, 1);
    const auto y = iota_rat(1, 1);
    const auto z = iota_rat(1, 2);
    const auto cert = ad::intrinsic_apart(x, y, Fuel{32});
    REQUIRE(cert.has_value());
    const auto res = ad::cotransit(*cert, x, y, z, Fuel{32});
    if (res.with_x)
        CHECK(ad::replay_apart(res.cert, x, z));
    else
        CHECK(ad::replay_apart(res.cert, y, z));
}

TEST_CASE("cotransit with z equal to one side lands on the other side") {
    const auto x = iota_rat(0, 1);
    const auto y = iota_rat(1, 1);
    const auto cert = ad::intrinsic_apart(x, y, Fuel{32});
    REQUIRE(cert.has_value());
    REQUIRE(!cert->flipped);  // scan finds the x-side witness first here
    const auto res = ad::cotransit(*cert, x, y, x, Fuel{32});
    CHECK(!res.with_x);  // x # x is impossible, so the y # z branch must fire
    CHECK(ad::replay_apart(res.cert, y, x));
}

TEST_CASE("cotransit on the Cantor domain yields a short prefix witness") {
    const auto x = cantor_point({0});
    const auto y = cantor_point({1});
    const auto z = dom::iota_seq(dom::cantor_basis(), dom::periodic_point({0, 1}), "z:0101...");
    const auto cert = ad::intrinsic_apart(x, y, Fuel{16});
    REQUIRE(cert.has_value());
    const auto res = ad::cotransit(*cert, x, y, z, Fuel{16});
    const ad::ApproxElement& other = res.with_x ? x : y;
    CHECK(ad::replay_apart(res.cert, other, z));
    CHECK(res.cert.inner.witness.text.size() <= 2);
}

TEST_CASE("cotransit rejects certificates that do not replay") {
    const auto x = iota_rat(0, 1);
    const auto y = iota_rat(1, 1);
    const auto z = iota_rat(1, 2);
    auto cert = ad::intrinsic_apart(x, y, Fuel{32});
    REQUIRE(cert.has_value());
    cert->inner.witness = Code{"(17/1,18/1)"};  // corrupt the witness
    CHECK_THROWS_AS(ad::cotransit(*cert, x, y, z, Fuel{32}), ad::PreconditionViolated);
}

TEST_CASE("cotransit requires a sharp oracle on z") {
    const auto x = iota_rat(0, 1);
    const auto y = iota_rat(1, 1);
    const auto cert = ad::intrinsic_apart(x, y, Fuel{32});
    REQUIRE(cert.has_value());
    ad::ApproxElement bare(dom::interval_basis(), "bare",
                           [z = iota_rat(1, 2)](ad::Nat n) { return z.chain_at(n); });
    CHECK_THROWS_AS(ad::cotransit(*cert, x, y, bare, Fuel{32}), ad::OracleFailure);
}

TEST_CASE("tight consequence: two chains of the same rational stay consistent") {
    const auto dyadic = iota_rat(1, 3, 2);
    const auto thirds = iota_rat(1, 3, 3);
    const auto rep = ad::tight_consequence(dyadic, thirds, Fuel{100});
    CHECK(rep.consistent());
}

TEST_CASE("tight consequence flags genuinely different elements") {
    const auto x = iota_rat(0, 1);
    const auto y = iota_rat(1, 1000000);
    const auto rep = ad::tight_consequence(x, y, Fuel{64});
    CHECK(!rep.consistent());
}

TEST_CASE("tight consequence on the Sierpinski domain") {
    const auto sd = dom::sierpinski_and_powerset(1).first.descriptor;
    const auto bot = ad::principal(sd, Code{"bot"});
    const auto top = ad::principal(sd, Code{"top"});
    const auto rep = ad::tight_consequence(bot, top, Fuel{4});
    CHECK(!rep.found_xy);  // bot is below top: no certificate in that direction
    CHECK(rep.found_yx);
}

TEST_CASE("hausdorff separation on the Cantor domain") {
    const auto x = cantor_point({0});
    const auto y = dom::iota_seq(dom::cantor_basis(),
                                 dom::eventually_constant_point({0, 1}, 1), "y:0111...");
    const auto cert = ad::hausdorff_separated(x, y, Fuel{16});
    REQUIRE(cert.has_value());
    CHECK(cert->a.text == "00");
    CHECK(cert->b.text == "01");
    CHECK(ad::replay_hausdorff(*cert, x, y));
}

TEST_CASE("hausdorff separation on the interval domain") {
    const auto x = iota_rat(0, 1);
    const auto y = iota_rat(1, 1);
    const auto cert = ad::hausdorff_separated(x, y, Fuel{16});
    REQUIRE(cert.has_value());
    CHECK(cert->a.text == "(-1/2,1/2)");
    CHECK(cert->b.text == "(1/2,3/2)");
    CHECK(ad::replay_hausdorff(*cert, x, y));
}

TEST_CASE("hausdorff separation never fires on an element against itself") {
    const auto x = iota_rat(1, 2);
    for (ad::Nat f : {1u, 8u, 24u}) CHECK(!ad::hausdorff_separated(x, x, Fuel{f}));
}

TEST_CASE("hausdorff separation requires the refine decision") {
    auto stripped = std::make_shared<ad::BasisDescriptor>(*dom::interval_basis());
    stripped->refine = nullptr;
    const auto x = ad::ApproxElement(stripped, "x", [e = iota_rat(0, 1)](ad::Nat n) {
        return e.chain_at(n);
    });
    CHECK_THROWS_AS(ad::hausdorff_separated(x, x, Fuel{4}), ad::MissingRefineDecision);
}

TEST_CASE("every hausdorff certificate converts to an apartness certificate") {
    const auto x = cantor_point({0});
    const auto y = cantor_point({1});
    const auto h = ad::hausdorff_separated(x, y, Fuel{16});
    REQUIRE(h.has_value());
    const auto apart = ad::apart_from_hausdorff(x, y, *h, Fuel{16});
    CHECK(ad::replay_apart(apart, x, y));

    const auto xr = iota_rat(0, 1);
    const auto yr = iota_rat(2, 1);
    const auto hr = ad::hausdorff_separated(xr, yr, Fuel{16});
    REQUIRE(hr.has_value());
    CHECK(ad::replay_apart(ad::apart_from_hausdorff(xr, yr, *hr, Fuel{16}), xr, yr));
}

TEST_CASE("smyth probe on the Cantor domain: prefix branch") {
    const auto x = dom::iota_seq(dom::cantor_basis(), dom::periodic_point({0, 1}), "x:0101...");
    const auto w = ad::smyth_maximal_probe(x, Code{"0"}, Code{"01"}, Fuel{8});
    CHECK(w.via_way_below);
    CHECK(x.descriptor().prec(Code{"0"}, w.d));
    CHECK(ad::replay_smyth(w, x));
}

TEST_CASE("smyth probe on the Cantor domain: separation branch") {
    const auto x = dom::iota_seq(dom::cantor_basis(), dom::periodic_point({0, 1}), "x:0101...");
    const auto w = ad::smyth_maximal_probe(x, Code{"1"}, Code{"11"}, Fuel{8});
    CHECK(!w.via_way_below);
    REQUIRE(w.separation.has_value());
    CHECK(w.separation->a.text == "1");
    CHECK(w.separation->b.text == "0");  // the stream's length-1 prefix
    CHECK(ad::replay_smyth(w, x));
}

TEST_CASE("smyth probe on the interval domain") {
    const auto x = iota_rat(1, 2);
    const auto w = ad::smyth_maximal_probe(x, Code{"(0/1,1/1)"}, Code{"(1/4,3/4)"}, Fuel{16});
    CHECK(w.via_way_below);
    CHECK(x.descriptor().prec(Code{"(0/1,1/1)"}, w.d));
    CHECK(ad::replay_smyth(w, x));
}

TEST_CASE("lawson membership: basic opens defer to way_below") {
    const auto x = dom::iota_seq(dom::cantor_basis(), dom::periodic_point({0, 1}), "x:0101...");
    CHECK(ad::lawson_neighbourhood_member(x, ad::LawsonSubbasic::basic(Code{"0"}), Fuel{8}) ==
          Tri::yes);
    CHECK(ad::lawson_neighbourhood_member(x, ad::LawsonSubbasic::basic(Code{"1"}), Fuel{8}) ==
          Tri::no);
}

TEST_CASE("lawson membership: co-specialization sets run the positive refutation") {
    const auto x = dom::iota_seq(dom::cantor_basis(), dom::periodic_point({0, 1}), "x:0101...");
    const auto z = cantor_point({1});
    CHECK(ad::lawson_neighbourhood_member(x, ad::LawsonSubbasic::co_set(z), Fuel{8}) == Tri::yes);
    CHECK(ad::lawson_neighbourhood_member(x, ad::LawsonSubbasic::co_set(x), Fuel{8}) ==
          Tri::unknown);
}

TEST_CASE("derived sharpness from strong maximality answers a grid of pairs") {
    const auto root2 = dom::iota_real(dom::sqrt_point(2), "sqrt:2");
    const auto oracle = ad::sharp_from_strongmax(root2);
    const auto& d = root2.descriptor();
    int answered = 0;
    for (ad::Nat i = 0; i <= 100; ++i)
        for (ad::Nat j = 0; j <= 100; j += 11) {
            const Code a = d.enumerate(i), b = d.enumerate(j);
            if (!d.prec(a, b)) continue;
            const auto ans = oracle(a, b);
            ++answered;
            if (ans.way_below) {
                CHECK(root2.member(a, Fuel{ans.member_fuel}).verdict == Tri::yes);
            } else {
                REQUIRE(ans.refutation.has_value());
                CHECK(ad::replay_refutation(*ans.refutation, root2));
            }
        }
    CHECK(answered > 20);
}

TEST_CASE("intrinsic_apart answers and witnesses are stable under fuel doubling") {
    std::mt19937 rng(99);
    for (int k = 0; k < 40; ++k) {
        const long long num = static_cast<long long>(rng() % 7);
        const auto x = iota_rat(num, 1 + static_cast<long long>(rng() % 3));
        const auto y = iota_rat(static_cast<long long>(rng() % 7), 2);
        const ad::Nat f = 4 + rng() % 24;
        const auto c1 = ad::intrinsic_apart(x, y, Fuel{f});
        if (!c1) continue;
        const auto c2 = ad::intrinsic_apart(x, y, Fuel{2 * f});
        REQUIRE(c2.has_value());
        CHECK(ad::to_json(*c1).dump() == ad::to_json(*c2).dump());
    }
}

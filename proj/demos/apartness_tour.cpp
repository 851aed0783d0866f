// A short tour of the library: build two presentations of real numbers,
// separate them with a replayable certificate, probe sharpness on the lower
// reals, and cross-check a law on a finite poset.

#include <iostream>

#include "apartdomain/apartdomain.hpp"

namespace ad = apartdomain;
namespace dom = apartdomain::domains;

int main() {
    // sqrt(2) and 3/2 as partial Dedekind reals, separated by certificate
    const auto root2 = dom::iota_real(dom::sqrt_point(2), "sqrt:2");
    const auto threehalves = dom::iota_real(dom::rational_point(ad::Rat(3, 2)), "rat:3/2");
    const auto cert = ad::intrinsic_apart(root2, threehalves, ad::Fuel{64});
    if (!cert) {
        std::cout << "unexpected: no certificate\n";
        return 1;
    }
    std::cout << "sqrt(2) # 3/2, certificate:\n"
              << ad::to_json(*cert).dump(2) << "\n"
              << "replay: " << (ad::replay_apart(*cert, root2, threehalves) ? "ok" : "failed")
              << "\n\n";

    // locatedness of a lower real, asked through its sharpness oracle
    const auto lower = dom::lower_sqrt(2);
    const auto oracle = dom::lower_real_sharp_oracle(lower);
    const auto ans = oracle(ad::Code{"7/5"}, ad::Code{"3/2"});
    std::cout << "lower sqrt(2) on (7/5, 3/2): "
              << (ans.way_below ? "7/5 is in the cut" : "3/2 is refuted") << "\n\n";

    // the finite oracle validates the Scott-topology laws exhaustively
    const auto report = ad::finite::theorem_suite(dom::pee_poset());
    std::cout << "theorem suite on the three-element poset: "
              << (report.all_pass() ? "all checks pass" : "FAILURES") << "; strongly maximal:";
    for (const auto& s : report.strongly_maximal) std::cout << " " << s;
    std::cout << "\n";
    return 0;
}

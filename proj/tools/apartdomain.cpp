// Command-line front end: certificate queries on the built-in domains and
// the finite-poset theorem suite. Exit codes: 0 = answer or certificate
// produced, 2 = Unknown at the given fuel, 1 = usage or contract error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "apartdomain/apartdomain.hpp"

namespace ad = apartdomain;
using ad::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

ad::Nat default_fuel() {
    if (const char* env = std::getenv("APARTDOMAIN_DEFAULT_FUEL")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<ad::Nat>(v);
        throw ad::PreconditionViolated("APARTDOMAIN_DEFAULT_FUEL must be a positive integer");
    }
    return 64;
}

void emit(const Json& j, const std::string& format) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else {
        for (const auto& [key, value] : j.items()) {
            std::cout << key << ": "
                      << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

struct CommonOpts {
    std::string domain;
    std::string format = "text";
    ad::Nat fuel = 0;  // 0 = use default

    ad::Fuel resolved_fuel() const {
        const ad::Nat f = fuel ? fuel : default_fuel();
        if (f < 1) throw ad::PreconditionViolated("fuel must be at least 1");
        return ad::Fuel{f};
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_domain = true) {
    if (with_domain)
        cmd->add_option("--domain", o.domain, "element domain: reals|cantor|baire|lower")
            ->required();
    cmd->add_option("--fuel", o.fuel, "search budget (default: APARTDOMAIN_DEFAULT_FUEL or 64)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
}

int run_apart(const CommonOpts& o, const std::string& xe, const std::string& ye, bool replay) {
    const ad::ApproxElement x = ad::expr::parse_element(o.domain, xe);
    const ad::ApproxElement y = ad::expr::parse_element(o.domain, ye);
    const auto cert = ad::intrinsic_apart(x, y, o.resolved_fuel());
    Json out;
    out["command"] = "apart";
    if (!cert) {
        out["verdict"] = "unknown";
        emit(out, o.format);
        return kExitUnknown;
    }
    out["verdict"] = "apart";
    out["certificate"] = ad::to_json(*cert);
    if (replay) {
        const bool ok = ad::replay_apart(*cert, x, y);
        out["replay"] = ok ? "ok" : "failed";
        if (!ok) {
            emit(out, o.format);
            return kExitError;
        }
    }
    emit(out, o.format);
    return kExitOk;
}

int run_waybelow(const CommonOpts& o, const std::string& code, const std::string& ye,
                 bool replay) {
    const ad::ApproxElement y = ad::expr::parse_element(o.domain, ye);
    const ad::Code b = ad::expr::parse_code(o.domain, code);
    const auto ans = ad::way_below(y, b, o.resolved_fuel());
    Json out;
    out["command"] = "waybelow";
    out["verdict"] = ad::to_cstring(ans.verdict);
    if (ans.verdict == ad::Tri::yes) out["member_fuel"] = ans.fuel_used;
    if (ans.refutation) {
        out["refutation"] = ad::to_json(*ans.refutation, y.label());
        if (replay) {
            const bool ok = ad::replay_refutation(*ans.refutation, y);
            out["replay"] = ok ? "ok" : "failed";
            if (!ok) {
                emit(out, o.format);
                return kExitError;
            }
        }
    }
    emit(out, o.format);
    return ans.verdict == ad::Tri::unknown ? kExitUnknown : kExitOk;
}

int run_hausdorff(const CommonOpts& o, const std::string& xe, const std::string& ye,
                  bool replay) {
    const ad::ApproxElement x = ad::expr::parse_element(o.domain, xe);
    const ad::ApproxElement y = ad::expr::parse_element(o.domain, ye);
    const auto cert = ad::hausdorff_separated(x, y, o.resolved_fuel());
    Json out;
    out["command"] = "hausdorff";
    if (!cert) {
        out["verdict"] = "unknown";
        emit(out, o.format);
        return kExitUnknown;
    }
    out["verdict"] = "separated";
    out["certificate"] = ad::to_json(*cert);
    if (replay) {
        const bool ok = ad::replay_hausdorff(*cert, x, y);
        out["replay"] = ok ? "ok" : "failed";
        if (!ok) {
            emit(out, o.format);
            return kExitError;
        }
    }
    emit(out, o.format);
    return kExitOk;
}

int run_sharp_query(const CommonOpts& o, const std::string& xe, const std::string& ac,
                    const std::string& bc) {
    const ad::ApproxElement x = ad::expr::parse_element(o.domain, xe);
    const ad::Code a = ad::expr::parse_code(o.domain, ac);
    const ad::Code b = ad::expr::parse_code(o.domain, bc);
    if (!x.descriptor().prec(a, b))
        throw ad::PreconditionViolated("sharp-query requires codes with a < b");
    const ad::SharpOracle* oracle = x.sharp_oracle();
    ad::SharpOracle lower_oracle;
    if (!oracle && o.domain == "lower") {
        lower_oracle = ad::domains::lower_real_sharp_oracle(x);
        oracle = &lower_oracle;
    }
    if (!oracle) throw ad::OracleFailure("element carries no sharpness oracle");
    const ad::SharpAnswer ans = (*oracle)(a, b);
    Json out;
    out["command"] = "sharp-query";
    out["answer"] = ad::to_json(ans, x.label());
    emit(out, o.format);
    return kExitOk;
}

int run_strongmax_query(const CommonOpts& o, const std::string& xe, const std::string& uc,
                        const std::string& vc) {
    const ad::ApproxElement x = ad::expr::parse_element(o.domain, xe);
    const ad::Code u = ad::expr::parse_code(o.domain, uc);
    const ad::Code v = ad::expr::parse_code(o.domain, vc);
    const auto w = ad::smyth_maximal_probe(x, u, v, o.resolved_fuel());
    Json out;
    out["command"] = "strongmax-query";
    out["witness_d"] = w.d.text;
    out["via"] = w.via_way_below ? "way-below" : "separation";
    if (w.separation) out["separation"] = ad::to_json(*w.separation);
    out["replay"] = ad::replay_smyth(w, x) ? "ok" : "failed";
    emit(out, o.format);
    return out["replay"] == "ok" ? kExitOk : kExitError;
}

int run_located(const CommonOpts& o, const std::string& le, const std::string& ps,
                const std::string& qs) {
    const ad::ApproxElement L = ad::expr::parse_element("lower", le);
    const auto p = ad::Rat::parse(ps), q = ad::Rat::parse(qs);
    if (!p || !q || !(*p < *q))
        throw ad::PreconditionViolated("located requires rationals p < q");
    const ad::SharpOracle oracle = ad::domains::lower_real_sharp_oracle(L);
    const ad::SharpAnswer ans = oracle(ad::domains::rat_code(*p), ad::domains::rat_code(*q));
    Json out;
    out["command"] = "located";
    out["query"] = {p->str(), q->str()};
    out["answer"] = ans.way_below ? "lower" : "upper";
    if (!ans.way_below) out["witness"] = ans.refutation->separator.text;
    emit(out, o.format);
    return kExitOk;
}

int run_exp_basis(const std::string& dom, const std::string& cod, ad::Nat size,
                  const std::string& format) {
    const auto dd = ad::expr::finite_descriptor_for(dom);
    const auto de = ad::expr::finite_descriptor_for(cod);
    const auto classes = ad::constructions::exp_basis_enumerate(*dd, *de, size);
    Json out;
    out["command"] = "exp-basis";
    out["count"] = classes.size();
    Json arr = Json::array();
    for (const auto& cls : classes) arr.push_back(cls.str());
    out["classes"] = arr;
    emit(out, format);
    return kExitOk;
}

int run_finite_check(const std::string& path, std::size_t max_size, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw ad::Error("cannot open poset file " + path);
    nlohmann::json pj;
    in >> pj;
    const ad::finite::FinitePoset poset = ad::finite::poset_from_json(pj);
    if (!ad::finite::way_below_matches_order(poset))
        throw ad::InvalidPoset("way-below oracle disagrees with order shortcut");
    const auto report = ad::finite::theorem_suite(poset, max_size);
    if (format == "json") {
        Json out;
        out["command"] = "finite-check";
        Json checks = Json::array();
        for (const auto& c : report.checks) {
            Json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            if (!c.pass) cj["counterexample"] = c.counterexample;
            checks.push_back(cj);
        }
        out["checks"] = checks;
        out["strongly_maximal"] = report.strongly_maximal;
        out["all_pass"] = report.all_pass();
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& c : report.checks)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                      << (c.pass ? "" : ": " + c.counterexample) << "\n";
        std::cout << "strongly maximal:";
        for (const auto& s : report.strongly_maximal) std::cout << " " << s;
        std::cout << "\n";
    }
    return report.all_pass() ? kExitOk : kExitError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computable domain theory: apartness certificates on continuous dcpos"};
    app.require_subcommand(1);

    CommonOpts apart_o, wb_o, hd_o, sharp_o, smax_o, loc_o;
    std::string arg1, arg2, arg3;
    bool replay = false;

    auto* apart = app.add_subcommand("apart", "semi-decide intrinsic apartness of two elements");
    add_common(apart, apart_o);
    apart->add_option("x", arg1)->required();
    apart->add_option("y", arg2)->required();
    apart->add_flag("--replay", replay, "re-verify the emitted certificate");

    auto* wb = app.add_subcommand("waybelow", "judge down(code) way below an element");
    add_common(wb, wb_o);
    wb->add_option("code", arg1)->required();
    wb->add_option("x", arg2)->required();
    wb->add_flag("--replay", replay);

    auto* hd = app.add_subcommand("hausdorff", "search for disjoint basic opens");
    add_common(hd, hd_o);
    hd->add_option("x", arg1)->required();
    hd->add_option("y", arg2)->required();
    hd->add_flag("--replay", replay);

    auto* sq = app.add_subcommand("sharp-query", "query an element's sharpness oracle");
    add_common(sq, sharp_o);
    sq->add_option("x", arg1)->required();
    sq->add_option("a", arg2)->required();
    sq->add_option("b", arg3)->required();

    auto* smq = app.add_subcommand("strongmax-query", "Smyth witness from the strong-maximality oracle");
    add_common(smq, smax_o);
    smq->add_option("x", arg1)->required();
    smq->add_option("u", arg2)->required();
    smq->add_option("v", arg3)->required();

    auto* loc = app.add_subcommand("located", "locatedness query on a lower real");
    add_common(loc, loc_o, false);
    loc->add_option("L", arg1)->required();
    loc->add_option("p", arg2)->required();
    loc->add_option("q", arg3)->required();

    std::string exp_dom, exp_cod, exp_format = "text";
    ad::Nat exp_size = 2;
    auto* expb = app.add_subcommand("exp-basis", "enumerate the exponential's compact basis");
    expb->add_option("--dom", exp_dom, "sierpinski|powerset:<n>|pP")->required();
    expb->add_option("--cod", exp_cod, "sierpinski|powerset:<n>|pP")->required();
    expb->add_option("--size", exp_size, "enumeration index bound");
    expb->add_option("--format", exp_format)->check(CLI::IsMember({"json", "text"}));

    std::string poset_path, fc_format = "text";
    std::size_t fc_max = 12;
    auto* fc = app.add_subcommand("finite-check", "run the theorem suite on a poset file");
    fc->add_option("--poset", poset_path, "poset JSON file")->required();
    fc->add_option("--max-size", fc_max, "carrier size cap (default 12)");
    fc->add_option("--format", fc_format)->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;  // --help exits cleanly
    }

    try {
        if (apart->parsed()) return run_apart(apart_o, arg1, arg2, replay);
        if (wb->parsed()) return run_waybelow(wb_o, arg1, arg2, replay);
        if (hd->parsed()) return run_hausdorff(hd_o, arg1, arg2, replay);
        if (sq->parsed()) return run_sharp_query(sharp_o, arg1, arg2, arg3);
        if (smq->parsed()) return run_strongmax_query(smax_o, arg1, arg2, arg3);
        if (loc->parsed()) return run_located(loc_o, arg1, arg2, arg3);
        if (expb->parsed()) return run_exp_basis(exp_dom, exp_cod, exp_size, exp_format);
        if (fc->parsed()) return run_finite_check(poset_path, fc_max, fc_format);
    } catch (const ad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

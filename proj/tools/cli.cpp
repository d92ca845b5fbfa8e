#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "matchfree/formulas.hpp"
#include "matchfree/sampling.hpp"

namespace matchfree::cli {

namespace {

using io::InputError;
using io::Json;

constexpr int kAuditLimit = 16;

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

std::string read_all(std::istream& s) {
    std::ostringstream buf;
    buf << s.rdbuf();
    return buf.str();
}

Family load_family(const std::string& path, std::istream& in) {
    if (path == "-") return io::parse_family(read_all(in));
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    return io::parse_family(read_all(f));
}

Json check(const std::string& name, bool ok, const std::string& detail = {}) {
    Json j;
    j["name"] = name;
    j["ok"] = ok;
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

std::string cell(int s, int c) { return "(s=" + std::to_string(s) + ",c=" + std::to_string(c) + ")"; }

// Main-statement cells, then the full/shifted cross-check, then the
// truncated cells; stops at the first failure.
Json theorem_suite(const SuiteOptions& o) {
    Json checks = Json::array();
    bool ok = true;
    for (int s = 2; s <= o.s_max && ok; ++s) {
        for (int c = 1; c <= s - 1 && ok && 2 * s + c <= kShiftedLimit; ++c) {
            const TheoremCheck t = verify_main_theorem(s, c);
            checks.push_back(check("main" + cell(s, c), t.ok, t.detail));
            ok = t.ok;
        }
    }
    for (int n = 1; n <= kFullIhsLimit && ok; ++n) {
        for (int s = 2; s <= n && ok; ++s) {
            const auto a = e_exact(n, s, OracleMode::FullIhs).value;
            const auto b = e_exact(n, s, OracleMode::Shifted).value;
            checks.push_back(check("full_vs_shifted(n=" + std::to_string(n) + ",s=" + std::to_string(s) + ")", a == b,
                                   std::to_string(a) + " vs " + std::to_string(b)));
            ok = a == b;
        }
    }
    for (int s = 2; s <= o.s_max && ok; ++s) {
        for (int c = 1; c <= s - 1 && ok && 2 * s + c <= kTruncatedLimit; ++c) {
            const TheoremCheck t = verify_truncated(s, c);
            checks.push_back(check("truncated" + cell(s, c), t.ok, t.detail));
            ok = t.ok;
        }
    }
    Json j;
    j["suite"] = "theorem";
    j["ok"] = ok;
    j["checks"] = checks;
    return j;
}

Json bounds_suite(const SuiteOptions& o) {
    Json checks = Json::array();
    bool ok = true;
    for (int s = 2; 2 * s + 1 <= 14; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= 14; ++c) {
            const Params p = make_params(s, c);
            for (FamilyKind k : kAllKinds) {
                const auto v = first_violation(audit_family(family_of(k, p), p));
                checks.push_back(check(std::string(kind_name(k)) + cell(s, c), !v, v.value_or("")));
                ok = ok && !v;
            }
        }
    }
    std::mt19937_64 rng(o.seed);
    const std::pair<int, int> cells[] = {{2, 1}, {3, 1}, {3, 2}};
    int violations = 0;
    std::string first;
    for (int t = 0; t < o.count; ++t) {
        const auto [s, c] = cells[t % 3];
        const Params p = make_params(s, c);
        const auto v = first_violation(audit_family(random_shifted_upset(rng, p.n, s), p));
        if (v) {
            if (violations == 0) first = "family " + std::to_string(t) + ": " + *v;
            ++violations;
        }
    }
    checks.push_back(check("random_shifted_upsets[" + std::to_string(o.count) + "]", violations == 0, first));
    ok = ok && violations == 0;
    Json j;
    j["suite"] = "bounds";
    j["ok"] = ok;
    j["checks"] = checks;
    return j;
}

Json claims_suite() {
    Json checks = Json::array();
    bool ok = true;
    const auto add = [&](const std::string& name, bool pass, const std::string& detail = {}) {
        checks.push_back(check(name, pass, detail));
        ok = ok && pass;
    };

    const ClaimA2Result a2 = check_claim_A2(10);
    std::string a2_detail = std::to_string(a2.cells) + " cells";
    if (a2.counterexample) {
        a2_detail += "; fails at c=" + std::to_string(a2.counterexample->c) + " d=" + std::to_string(a2.counterexample->d) +
                     " l=" + std::to_string(a2.counterexample->l);
    }
    add("odd_d_disjunction(c<=10)", a2.ok, a2_detail);

    bool fg = true;
    for (int l = 1; l <= 20; ++l) {
        for (int c = 1; c <= 10; ++c) fg = fg && fg_endpoints(l, c).ok;
    }
    add("endpoint_identities(l<=20,c<=10)", fg, kPackingDenominatorNote);

    bool thr = true;
    for (int s = 3; s <= 60; ++s) {
        for (int c = 1; c <= s - 2; ++c) thr = thr && threshold_pprime_vs_p(formula_params(s, c)) == (s >= 7 * c + 2);
    }
    add("pprime_threshold(s<=60)", thr, "compPprime <= compP iff s >= 7c+2");

    bool mono = true;
    for (int s = 3; s <= 40; ++s) {
        for (int l = 3; l <= s - 1; ++l) {
            mono = mono && nkm_minima(formula_params(s - 1, s - l + 1)).M > nkm_minima(formula_params(s, s - l)).M;
        }
    }
    add("m_monotone(s<=40)", mono);

    bool same = true;
    for (int s = 2; s <= 60; ++s) {
        const CompSizes v = comp_sizes(formula_params(s, s - 1));
        same = same && v.P == v.Pprime;
    }
    add("l1_pprime_equals_p", same);

    add("three_winners(s=5,c=1)", regime_classify(make_params(5, 1)).winners_label() == "P|Q|W",
        regime_classify(make_params(5, 1)).winners_label());

    bool never = true;
    for (int s = 3; s <= 60; ++s) {
        for (int c = 1; c <= std::min(9, s - 2); ++c) {
            for (FamilyKind k : regime_classify(formula_params(s, c)).winners) never = never && k != FamilyKind::Pprime;
        }
    }
    add("pprime_not_extremal(c<=9,s<=60)", never);

    Json j;
    j["suite"] = "claims";
    j["ok"] = ok;
    j["checks"] = checks;
    return j;
}

Family construct(const std::string& name, int s, int c, int m, int l, int n, int k, int i) {
    if (name == "P_general") return family_P_general(s, m, l);
    if (name == "A") return family_A(n, k, i, s);
    if (name == "kleitman") return family_kleitman(n, s);
    return family_of(parse_kind(name), make_params(s, c));
}

}  // namespace

Json run_suite(const std::string& suite, const SuiteOptions& opts) {
    if (suite == "theorem") return theorem_suite(opts);
    if (suite == "bounds") return bounds_suite(opts);
    if (suite == "claims") return claims_suite();
    throw InputError("unknown suite: " + suite);
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Set families with bounded matching number"};
    app.name("matchfree");
    app.require_subcommand(1);

    std::string input = "-";
    std::string family;
    int s = 0;
    int c = 0;
    int m = 0;
    int l = 0;
    int n = 0;
    int k = 0;
    int i = 0;
    int j = 0;
    bool allow_empty = false;
    std::string format = "csv";
    int s_max = 0;
    std::string mode = "shifted";
    int max_layer = 0;
    int uniform = 0;
    std::int64_t expect = 0;
    std::int64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::string suite;
    int count = 200;

    auto* construct_cmd = app.add_subcommand("construct", "Emit a generated family as JSON");
    construct_cmd->add_option("--family", family, "P, Pprime, Q, W, P_general, A or kleitman")->required();
    construct_cmd->add_option("--s", s);
    construct_cmd->add_option("--c", c);
    construct_cmd->add_option("--m", m, "P_general");
    construct_cmd->add_option("--l", l, "P_general");
    construct_cmd->add_option("--n", n, "A, kleitman");
    construct_cmd->add_option("--k", k, "A");
    construct_cmd->add_option("--i", i, "A");

    auto* nu_cmd = app.add_subcommand("nu", "Matching number of a family");
    nu_cmd->add_option("--input", input, "family JSON file, - for stdin");
    nu_cmd->add_flag("--allow-empty", allow_empty, "count the empty set as one matching member");

    auto* shift_cmd = app.add_subcommand("shift", "One (i <- j) shift, or the full shift closure");
    shift_cmd->add_option("--input", input);
    auto* opt_i = shift_cmd->add_option("--i", i);
    auto* opt_j = shift_cmd->add_option("--j", j);
    opt_i->needs(opt_j);
    opt_j->needs(opt_i);

    auto* d_cmd = app.add_subcommand("d", "The pair invariant d of a family");
    d_cmd->add_option("--input", input);
    d_cmd->add_option("--s", s)->required();
    d_cmd->add_option("--c", c)->required();

    auto* certify_cmd = app.add_subcommand("certify", "Fractional cover of a generator, checked exactly");
    certify_cmd->add_option("--family", family)->required();
    certify_cmd->add_option("--s", s)->required();
    certify_cmd->add_option("--c", c)->required();
    auto* opt_input = certify_cmd->add_option("--input", input, "check this family instead of the generator");

    auto* formulas_cmd = app.add_subcommand("formulas", "Closed-form counts for one parameter cell");
    formulas_cmd->add_option("--s", s)->required();
    formulas_cmd->add_option("--c", c)->required();

    auto* regime_cmd = app.add_subcommand("regime-map", "Winners over all cells up to s_max");
    regime_cmd->add_option("--s-max", s_max)->required()->check(CLI::Range(2, 30));
    regime_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    auto* oracle_cmd = app.add_subcommand("oracle", "Exact largest family without an s-matching");
    oracle_cmd->add_option("--n", n)->required();
    oracle_cmd->add_option("--s", s)->required();
    oracle_cmd->add_option("--mode", mode)->check(CLI::IsMember({"full", "shifted", "truncated"}));
    oracle_cmd->add_option("--max-layer", max_layer);
    oracle_cmd->add_option("--uniform", uniform, "search k-uniform families instead");
    auto* opt_expect = oracle_cmd->add_option("--expect", expect, "exit 1 unless the value matches");

    auto* audit_cmd = app.add_subcommand("audit-bounds", "Every lower bound against the generators");
    audit_cmd->add_option("--s", s)->required();
    audit_cmd->add_option("--c", c)->required();
    auto* opt_audit_input = audit_cmd->add_option("--input", input, "audit this family instead of the generators");
    audit_cmd->add_option("--trials", trials, "Monte Carlo trials per procedure, 0 to skip")->check(CLI::NonNegativeNumber);
    audit_cmd->add_option("--seed", seed);

    auto* verify_cmd = app.add_subcommand("verify", "Batch verification suites");
    verify_cmd->add_option("--suite", suite)->required()->check(CLI::IsMember({"theorem", "bounds", "claims"}));
    verify_cmd->add_option("--s-max", s_max, "theorem suite cells")->check(CLI::Range(2, 10));
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--count", count, "random families in the bounds suite")->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }

    try {
        if (construct_cmd->parsed()) {
            emit(out, io::family_to_json(construct(family, s, c, m, l, n, k, i)));
            return kExitOk;
        }
        if (nu_cmd->parsed()) {
            const NuResult r = nu(load_family(input, in), MatchingOptions{allow_empty});
            Json o;
            o["size"] = r.size;
            o["witness"] = io::sets_to_json(r.witness);
            emit(out, o);
            return kExitOk;
        }
        if (shift_cmd->parsed()) {
            const Family f = load_family(input, in);
            emit(out, io::family_to_json(opt_i->count() ? shift_once(f, i, j) : shift_closure(f)));
            return kExitOk;
        }
        if (d_cmd->parsed()) {
            const Params p = make_params(s, c);
            const Family f = load_family(input, in);
            Json o;
            o["params"] = io::params_to_json(p);
            try {
                o["d"] = d_of(f, p);
            } catch (const std::domain_error& e) {
                o["d"] = nullptr;
                o["error"] = e.what();
                emit(out, o);
                return kExitFailure;
            }
            emit(out, o);
            return kExitOk;
        }
        if (certify_cmd->parsed()) {
            const Params p = make_params(s, c);
            const FamilyKind kind = parse_kind(family);
            const FractionalCover x = certificate_for(kind, p);
            const bool verified =
                opt_input->count() ? verify_cover(load_family(input, in), x, s) : verify_cover(profile_of(kind, p), x, s);
            Json o;
            o["family"] = std::string(kind_name(kind));
            o["params"] = io::params_to_json(p);
            Json w = Json::array();
            for (const Rational& r : x.weights) w.push_back(io::rational_to_json(r));
            o["weights"] = w;
            o["total"] = io::rational_to_json(x.total());
            o["verified"] = verified;
            emit(out, o);
            return verified ? kExitOk : kExitFailure;
        }
        if (formulas_cmd->parsed()) {
            const Params p = make_params(s, c);
            const CompSizes v = comp_sizes(p);
            const Y23Totals y = y23_totals(p);
            const NKM nkm = nkm_minima(p);
            Json o;
            o["params"] = io::params_to_json(p);
            o["comp"] = {{"P", v.P}, {"Pprime", v.Pprime}, {"Q", v.Q}, {"W", v.W}};
            o["y23"] = {{"P", y.P}, {"Pprime", y.Pprime}, {"Q", y.Q}};
            o["w_leq3"] = w_leq3(p);
            o["N"] = nkm.N;
            o["K"] = nkm.K;
            o["M"] = nkm.M;
            o["winners"] = regime_classify(p).winners_label();
            if (p.l >= 2) {
                o["pprime_le_p"] = threshold_pprime_vs_p(p);
            } else {
                o["pprime_le_p"] = nullptr;
            }
            emit(out, o);
            return kExitOk;
        }
        if (regime_cmd->parsed()) {
            if (format == "csv") {
                out << regime_map_csv(s_max);
                return kExitOk;
            }
            Json rows = Json::array();
            for (int ss = 2; ss <= s_max; ++ss) {
                for (int cc = 1; cc <= ss - 1 && 2 * ss + cc <= kMaxGround; ++cc) {
                    const Params p = make_params(ss, cc);
                    const RegimeVerdict r = regime_classify(p);
                    Json row = io::params_to_json(p);
                    row["compP"] = r.values.P;
                    row["compPprime"] = r.values.Pprime;
                    row["compQ"] = r.values.Q;
                    row["compW"] = r.values.W;
                    row["winners"] = r.winners_label();
                    rows.push_back(row);
                }
            }
            emit(out, rows);
            return kExitOk;
        }
        if (oracle_cmd->parsed()) {
            const OracleResult r = uniform > 0 ? ek_exact(n, uniform, s) : e_exact(n, s, parse_mode(mode), max_layer);
            Json o = io::oracle_to_json(r);
            if (uniform > 0) o["uniform"] = uniform;
            emit(out, o);
            if (opt_expect->count() && r.value != expect) {
                err << "expected " << expect << ", found " << r.value << '\n';
                return kExitFailure;
            }
            return kExitOk;
        }
        if (audit_cmd->parsed()) {
            const Params p = make_params(s, c);
            Json arr = Json::array();
            bool ok = true;
            const auto audit = [&](const std::string& label, const Family& f) {
                for (const BoundReport& r : audit_family(f, p)) {
                    Json e = io::report_to_json(r);
                    e["family"] = label;
                    arr.push_back(e);
                }
                ok = ok && !first_violation(audit_family(f, p));
            };
            if (opt_audit_input->count()) {
                audit("input", load_family(input, in));
            } else {
                if (p.n > kAuditLimit) throw InputError("generator audits limited to n <= 16; pass --input");
                for (FamilyKind kind : kAllKinds) audit(std::string(kind_name(kind)), family_of(kind, p));
            }
            if (trials > 0) {
                for (int d = 1; d <= c + 1; ++d) {
                    const int xsize = 2 * p.l + d - 1;
                    const McResult r = d % 2 == 1 ? mc_odd(p.l, c, d, trials, seed) : mc_even(p.l, c, d, xsize, trials, seed);
                    Json e;
                    e["kind"] = "montecarlo";
                    e["procedure"] = d % 2 == 1 ? "odd" : "even";
                    e["params"] = {{"l", p.l}, {"c", c}, {"d", d}};
                    if (d % 2 == 0) e["params"]["xsize"] = xsize;
                    e["probe"] = {r.probe_x, r.y1, r.y2};
                    e["triple"] = io::estimate_to_json(r.triple);
                    e["x_in_z"] = io::estimate_to_json(r.x_in_z);
                    if (!r.z_counts.empty()) e["z_counts"] = r.z_counts;
                    arr.push_back(e);
                }
            }
            emit(out, arr);
            return ok ? kExitOk : kExitFailure;
        }
        if (verify_cmd->parsed()) {
            SuiteOptions o;
            if (s_max > 0) o.s_max = s_max;
            o.seed = seed;
            o.count = count;
            const Json r = run_suite(suite, o);
            emit(out, r);
            return r["ok"].get<bool>() ? kExitOk : kExitFailure;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}

}  // namespace matchfree::cli

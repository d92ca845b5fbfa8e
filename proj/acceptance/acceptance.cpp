// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "matchfree/constructions.hpp"
#include "matchfree/formulas.hpp"
#include "matchfree/invariant_d.hpp"
#include "matchfree/montecarlo.hpp"
#include "matchfree/oracle.hpp"
#include "matchfree/sampling.hpp"
#include "matchfree/setfam.hpp"
#include "oracles.hpp"

using namespace matchfree;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

template <typename Fn>
void for_cells(int n_max, Fn&& fn) {
    for (int s = 2; 2 * s + 1 <= n_max; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= n_max; ++c) fn(make_params(s, c));
    }
}

std::int64_t sum_from(const std::vector<std::uint64_t>& y, int lo, int hi) {
    std::int64_t t = 0;
    for (int i = lo; i <= hi && i < static_cast<int>(y.size()); ++i) t += static_cast<std::int64_t>(y[i]);
    return t;
}

Verdict constructions_match_formulas() {
    Verdict v;
    int scanned = 0;
    int profiled = 0;
    for_cells(62, [&](const Params& p) {
        const CompSizes comp = comp_sizes(p);
        for (FamilyKind k : kAllKinds) {
            const ProfileFamily f = profile_of(k, p);
            const auto y = f.missing_per_layer();
            if (p.n <= 24) {
                ++scanned;
                if (f.missing_per_layer_by_scan() != y) v.ok = false;
            } else {
                ++profiled;
            }
            if (k == FamilyKind::W && comp.W == INT64_MAX) {
                if (sum_from(y, 0, 3) != w_leq3(p)) v.ok = false;
                continue;
            }
            if (sum_from(y, 0, p.n) != comp.of(k)) v.ok = false;
        }
        const Y23Totals t = y23_totals(p);
        const auto y23 = [&](FamilyKind k) { return sum_from(profile_of(k, p).missing_per_layer(), 2, 3); };
        if (y23(FamilyKind::P) != t.P || y23(FamilyKind::Pprime) != t.Pprime || y23(FamilyKind::Q) != t.Q) v.ok = false;
        if (sum_from(profile_of(FamilyKind::W, p).missing_per_layer(), 0, 3) != w_leq3(p)) v.ok = false;
        if (!v.ok && v.detail.empty()) v.detail = "mismatch at s=" + std::to_string(p.s) + " c=" + std::to_string(p.c);
    });
    if (v.detail.empty()) {
        v.detail = std::to_string(scanned) + " families by subset scan (n<=24), " + std::to_string(profiled) +
                   " by per-layer profile counts (n<=62)";
    }
    return v;
}

Verdict certificates() {
    Verdict v;
    int count = 0;
    for_cells(62, [&](const Params& p) {
        for (FamilyKind k : kAllKinds) {
            ++count;
            if (!verify_cover(profile_of(k, p), certificate_for(k, p), p.s)) {
                v.ok = false;
                v.detail = std::string(kind_name(k)) + " at s=" + std::to_string(p.s) + " c=" + std::to_string(p.c);
            }
        }
    });
    if (v.ok) v.detail = std::to_string(count) + " covers verified (n<=62)";
    return v;
}

Verdict matching_freeness() {
    Verdict v;
    int count = 0;
    for_cells(20, [&](const Params& p) {
        for (FamilyKind k : kAllKinds) {
            ++count;
            if (nu(family_of(k, p)).size >= p.s) v.ok = false;
        }
    });
    const std::pair<int, int> cells[] = {{3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}};
    for (const auto& [s, c] : cells) {
        const Params p = make_params(s, c);
        for (FamilyKind k : {FamilyKind::P, FamilyKind::Q, FamilyKind::W}) {
            if (nu(family_of(k, p)).size != s - 1) {
                v.ok = false;
                v.detail = "nu != s-1 for " + std::string(kind_name(k)) + " at s=" + std::to_string(s) + " c=" + std::to_string(c);
            }
        }
    }
    if (v.ok) v.detail = std::to_string(count) + " generators with nu < s (n<=20); nu = s-1 at 5 cells";
    return v;
}

Verdict main_statement() {
    Verdict v;
    int cells = 0;
    for_cells(kShiftedLimit, [&](const Params& p) {
        ++cells;
        const TheoremCheck t = verify_main_theorem(p.s, p.c);
        if (!t.ok) {
            v.ok = false;
            v.detail = "s=" + std::to_string(p.s) + " c=" + std::to_string(p.c) + ": " + t.detail;
        }
    });
    int cross = 0;
    for (int n = 1; n <= kFullIhsLimit; ++n) {
        for (int s = 2; s <= n + 1; ++s) {
            ++cross;
            if (e_exact(n, s, OracleMode::FullIhs).value != e_exact(n, s, OracleMode::Shifted).value) {
                v.ok = false;
                v.detail = "full/shifted disagree at n=" + std::to_string(n) + " s=" + std::to_string(s);
            }
        }
    }
    const auto e52 = e_exact(5, 2, OracleMode::FullIhs).value;
    const auto e73 = e_exact(7, 3, OracleMode::Shifted).value;
    if (e52 != 16 || e73 != 105) {
        v.ok = false;
        v.detail = "anchors e(5,2)=" + std::to_string(e52) + " e(7,3)=" + std::to_string(e73);
    }
    if (v.ok) {
        v.detail = std::to_string(cells) + " cells (n<=9), " + std::to_string(cross) +
                   " full/shifted cross-checks (n<=6), e(5,2)=16, e(7,3)=105";
    }
    return v;
}

Verdict truncated_statement() {
    Verdict v;
    int cells = 0;
    std::string failures;
    for_cells(kTruncatedLimit, [&](const Params& p) {
        ++cells;
        const TheoremCheck t = verify_truncated(p.s, p.c);
        if (!t.ok) {
            v.ok = false;
            if (!failures.empty()) failures += "; ";
            failures += "s=" + std::to_string(p.s) + " c=" + std::to_string(p.c) + ": " + t.detail;
        }
    });
    const auto anchor = e_exact(7, 3, OracleMode::Truncated, 3).value;
    if (anchor != 41) {
        v.ok = false;
        failures += "; anchor e(7,3) on layers <= 3 is " + std::to_string(anchor);
    }
    v.detail = std::to_string(cells) + " cells (n<=10), anchor 41";
    if (!v.ok) v.detail += "; failing: " + failures;
    return v;
}

Verdict regime_facts() {
    Verdict v;
    if (regime_classify(make_params(5, 1)).winners_label() != "P|Q|W") {
        v.ok = false;
        v.detail = "(s=5,c=1) winners " + regime_classify(make_params(5, 1)).winners_label();
    }
    for (int s = 2; s <= 200; ++s) {
        const Params p = formula_params(s, s - 1);
        if (comp_sizes(p).P != comp_sizes(p).Pprime) v.ok = false;
    }
    for (int s = 3; s <= 60; ++s) {
        for (int c = 1; c <= s - 2; ++c) {
            if (threshold_pprime_vs_p(formula_params(s, c)) != (s >= 7 * c + 2)) v.ok = false;
        }
    }
    for (int s = 4; s <= 60; ++s) {
        if (threshold_pprime_vs_p(formula_params(s, 2)) != (s >= 16)) v.ok = false;
    }
    if (v.ok) v.detail = "(5,1) -> P|Q|W; P'=P when l=1; threshold s>=7c+2 (s<=60); c=2 at s>=16";
    else if (v.detail.empty()) v.detail = "regime identity mismatch";
    return v;
}

constexpr std::pair<int, int> kSmallCells[] = {{2, 1}, {3, 1}, {3, 2}};

Verdict d_anchors() {
    Verdict v;
    int count = 0;
    for_cells(24, [&](const Params& p) {
        ++count;
        const int want[] = {0, 0, p.c, 2 * p.c};
        int i = 0;
        for (FamilyKind k : kAllKinds) {
            if (d_of(profile_of(k, p), p) != want[i++]) {
                v.ok = false;
                v.detail = "d(" + std::string(kind_name(k)) + ") at s=" + std::to_string(p.s) + " c=" + std::to_string(p.c);
            }
        }
    });
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [s, c] = kSmallCells[trial % 3];
        const Params p = make_params(s, c);
        const Family f = random_shifted_upset(rng, p.n, s);
        if (oracle::brute_nu(f) >= s || d_of(f, p) > 2 * c) {
            v.ok = false;
            v.detail = "random family " + std::to_string(trial);
        }
    }
    if (v.ok) v.detail = std::to_string(count) + " cells (n<=24); d<=2c on 1000 random shifted families (n<=8)";
    return v;
}

Verdict bound_audits() {
    Verdict v;
    int generators = 0;
    for_cells(14, [&](const Params& p) {
        for (FamilyKind k : kAllKinds) {
            ++generators;
            if (const auto bad = first_violation(audit_family(family_of(k, p), p))) {
                v.ok = false;
                v.detail = *bad + " on " + std::string(kind_name(k));
            }
        }
    });
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [s, c] = kSmallCells[trial % 3];
        const Params p = make_params(s, c);
        if (const auto bad = first_violation(audit_family(random_shifted_upset(rng, p.n, s), p))) {
            v.ok = false;
            v.detail = *bad + " on random family " + std::to_string(trial);
        }
    }
    for_cells(62, [&](const Params& p) {
        const auto yp = static_cast<std::int64_t>(profile_of(FamilyKind::P, p).missing_per_layer()[2]);
        const auto ypp = static_cast<std::int64_t>(profile_of(FamilyKind::Pprime, p).missing_per_layer()[2]);
        const Rational b = y2_lower(p.l, p.c, 0, ParityMode::Even);
        if (b != Rational(yp) && b != Rational(ypp)) {
            v.ok = false;
            v.detail = "d=0 y2 bound hits neither P nor P' at s=" + std::to_string(p.s) + " c=" + std::to_string(p.c);
        }
    });
    if (v.ok) {
        v.detail = std::to_string(generators) + " generator audits (n<=14), 1000 random families, d=0 y2 bound attained";
    }
    return v;
}

Verdict monte_carlo() {
    Verdict v;
    constexpr std::int64_t trials = 1'000'000;
    const McResult odd = mc_odd(2, 2, 3, trials);
    const McResult even = mc_even(2, 3, 4, 6, trials);
    char buf[200];
    std::snprintf(buf, sizeof buf, "odd %lld/%lld z=%.2f (target 1/18), even %lld/%lld z=%.2f (target 4/135)",
                  static_cast<long long>(odd.triple.hits), static_cast<long long>(trials), odd.triple.z_score,
                  static_cast<long long>(even.triple.hits), static_cast<long long>(trials), even.triple.z_score);
    v.detail = buf;
    if (odd.triple.target != Rational(1, 18) || even.triple.target != Rational(4, 135)) v.ok = false;
    if (std::abs(odd.triple.z_score) >= 4.0 || std::abs(even.triple.z_score) >= 4.0) v.ok = false;
    if (mc_odd(2, 2, 3, trials).triple.hits != odd.triple.hits) v.ok = false;
    setenv("MATCHFREE_THREADS", "3", 1);
    const bool same = mc_even(2, 3, 4, 6, trials).triple.hits == even.triple.hits;
    unsetenv("MATCHFREE_THREADS");
    if (!same) v.ok = false;
    v.detail += v.ok ? "; repeat runs identical" : "; FAILED";
    return v;
}

Verdict disjunction_and_endpoints() {
    Verdict v;
    const ClaimA2Result a2 = check_claim_A2(10);
    if (!a2.ok) v.ok = false;
    for (int l = 1; l <= 20; ++l) {
        for (int c = 1; c <= 10; ++c) {
            const FgReport r = fg_endpoints(l, c);
            if (!r.ok || !r.f_c_equals_yQ) v.ok = false;
        }
    }
    const std::string note = fg_endpoints(2, 1).note;
    if (note.find("/6") == std::string::npos || note.find("by 2") == std::string::npos) v.ok = false;
    v.detail = std::to_string(a2.cells) + " disjunction cells (c<=10); f(c)=yQ for l<=20, c<=10; note: " + note;
    return v;
}

Verdict properties() {
    Verdict v;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick_n(3, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = pick_n(rng);
        const Family f = oracle::random_family(rng, n, 0.03 + 0.01 * (trial % 8));
        const int before = oracle::brute_nu(f);
        std::uniform_int_distribution<int> pick_j(2, n);
        const int j = pick_j(rng);
        const int i = std::uniform_int_distribution<int>(1, j - 1)(rng);
        const Family once = shift_once(f, i, j);
        const Family closed = shift_closure(f);
        if (once.size() != f.size() || closed.size() != f.size()) v.ok = false;
        if (oracle::brute_nu(once) > before || oracle::brute_nu(closed) > before) v.ok = false;
        if (n <= 7) {
            const Family g = doubling(f);
            if (g.size() != 2 * f.size() || oracle::brute_nu(g) != before) v.ok = false;
        }
    }
    if (!v.ok) v.detail = "shift or doubling property failed";
    int pairs = 0;
    for (int s = 2; s <= kShiftedLimit; ++s) {
        for (int n = 1; n < kShiftedLimit; ++n) {
            ++pairs;
            if (e_exact(n + 1, s, OracleMode::Shifted).value < 2 * e_exact(n, s, OracleMode::Shifted).value) {
                v.ok = false;
                v.detail = "e(n+1,s) < 2e(n,s) at n=" + std::to_string(n) + " s=" + std::to_string(s);
            }
        }
    }
    if (v.ok) {
        v.detail = "1000 random shifts and doublings vs brute-force nu; e(n+1,s)>=2e(n,s) on " + std::to_string(pairs) +
                   " pairs (n<=9)";
    }
    return v;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"construction sizes match closed forms", constructions_match_formulas},
        {"fractional covers certify all generators", certificates},
        {"generators have no s-matching", matching_freeness},
        {"exact maximum equals the four-family formula", main_statement},
        {"truncated maximum equals its formula", truncated_statement},
        {"regime map facts", regime_facts},
        {"d of the generators and d <= 2c", d_anchors},
        {"bound audits", bound_audits},
        {"sampling procedures", monte_carlo},
        {"odd-d disjunction and endpoint identities", disjunction_and_endpoints},
        {"shifting, doubling and growth properties", properties},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!v.ok) ++failed;
        std::printf("%s %d %s (%.1fs): %s\n", v.ok ? "PASS" : "FAIL", index, name, secs, v.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

#include "matchfree/invariant_d.hpp"

#include <algorithm>

#include "matchfree/formulas.hpp"

namespace matchfree {

namespace {

SetMask pair_of(int a, int b) { return element_bit(a) | element_bit(b); }

// Members of size k inside [lo, hi].
Family layer_within(const Family& f, int k, int lo, int hi) {
    const SetMask window = interval_mask(lo, hi);
    std::vector<SetMask> out;
    for (SetMask m : f) {
        if (set_size(m) == k && (m & ~window) == 0) out.push_back(m);
    }
    return Family::from_canonical(f.n(), std::move(out));
}

int nu_of(const Family& f) { return nu(f).size; }

std::int64_t ceil_half(std::int64_t d) { return (d + 1) / 2; }

// (4l+3c+d-2)(3c-d+1)/2: pairs that shift onto {1, 2l+d}.
Rational y2_first(std::int64_t l, std::int64_t c, std::int64_t d) {
    return Rational((4 * l + 3 * c + d - 2) * (3 * c - d + 1), 2);
}

// (l+3c-h+1)(l+3c-h)/2 with h = d/2 (even) or (d+1)/2 (odd).
Rational y2_second(std::int64_t l, std::int64_t c, std::int64_t h) {
    return Rational((l + 3 * c - h + 1) * (l + 3 * c - h), 2);
}

BoundReport make_report(std::string name, bool hyp, Rational bound, std::int64_t observed, std::string note = {}) {
    BoundReport r;
    r.name = std::move(name);
    r.hypothesis_ok = hyp;
    r.bound = bound;
    r.observed = observed;
    r.holds = !hyp || Rational(observed) >= bound;
    r.note = std::move(note);
    return r;
}

std::string with_d(const std::string& base, int d) { return base + "[d=" + std::to_string(d) + "]"; }

}  // namespace

namespace {

template <typename Contains>
bool pair_condition(const Contains& contains, const Params& p, int d) {
    const int l = p.l;
    if (d < 0 || 2 * l + d > p.n) {
        throw std::invalid_argument("pair condition needs 0 <= d and 2l + d <= n");
    }
    if (d % 2 == 0) {
        for (int i = 1; i <= l + d / 2; ++i) {
            if (!contains(pair_of(i, 2 * l + d + 1 - i))) return true;
        }
        return false;
    }
    if (!contains(pair_of(1, 2 * l + d))) return true;
    for (int i = 3; i <= l + (d + 1) / 2; ++i) {
        if (!contains(pair_of(i, 2 * l + d + 2 - i))) return true;
    }
    return false;
}

template <typename Contains>
int least_d(const Contains& contains, int n, const Params& p) {
    if (n != p.n) {
        throw std::invalid_argument("family ground set differs from n");
    }
    for (int d = 0; 2 * p.l + d <= p.n; ++d) {
        if (pair_condition(contains, p, d)) return d;
    }
    throw std::domain_error("no d satisfies the pair condition within [n]");
}

}  // namespace

bool monotone_condition(const Family& f, const Params& p, int d) {
    return pair_condition([&](SetMask m) { return f.contains(m); }, p, d);
}

bool monotone_condition(const ProfileFamily& f, const Params& p, int d) {
    return pair_condition([&](SetMask m) { return f.contains(m); }, p, d);
}

int d_of(const Family& f, const Params& p) {
    return least_d([&](SetMask m) { return f.contains(m); }, f.n(), p);
}

int d_of(const ProfileFamily& f, const Params& p) {
    return least_d([&](SetMask m) { return f.contains(m); }, f.n, p);
}

Rational y2_lower(int l, int c, int d, ParityMode mode) {
    if (d < 0) {
        throw std::invalid_argument("d must be nonnegative");
    }
    switch (mode) {
        case ParityMode::Even:
            if (d % 2 != 0) throw std::invalid_argument("even mode needs even d");
            return std::min(y2_first(l, c, d), y2_second(l, c, d / 2));
        case ParityMode::Odd:
            if (d % 2 != 1) throw std::invalid_argument("odd mode needs odd d");
            if (d > 2 * c) throw std::invalid_argument("odd mode needs d <= 2c");
            return std::min(y2_first(l, c, d), y2_second(l, c, (d + 1) / 2));
        case ParityMode::Combined:
            return std::min(y2_first(l, c, d), y2_second(l, c, ceil_half(d)));
    }
    return Rational(0);
}

Y2Gap y2_gap(int l, int c, int d) {
    if (d < 0 || d > 2 * c) {
        throw std::invalid_argument("y2_gap needs 0 <= d <= 2c");
    }
    const std::int64_t h = ceil_half(d);
    return Y2Gap{Rational(static_cast<std::int64_t>(4 * l + d - 3) * d, 2),
                 Rational((2 * static_cast<std::int64_t>(l) + 6 * c - h + 1) * h, 2)};
}

Rational packing_term(int c, int d, int den) {
    return Rational(static_cast<std::int64_t>(2 * d + 1) * (3 * c - d) * (3 * c - d - 1), den);
}

std::vector<MenuEntry> y3_lower_menu(int l, int c, int d, std::optional<int> xsize) {
    const std::int64_t s = l + c;
    const auto C2 = [](std::int64_t n) { return static_cast<std::int64_t>(binom(n, 2)); };
    std::vector<MenuEntry> out;

    out.push_back({"outer_matching", "d > 0 and nu < s", d > 0, Rational(C2(3 * c - 1))});

    out.push_back({"odd_random_matching",
                   "d odd, d <= c+1, shifted, d(F) >= d, nu(F cap C([2l+d,n],3)) >= c-d+1",
                   d % 2 == 1 && d <= c + 1,
                   Rational(static_cast<std::int64_t>(2 * l + d - 1) * (2 * d - 3))});

    {
        MenuEntry e{"even_random_matching",
                    "d even in [2,c+1], d(F) >= d, nu(F cap C([2l+d,n],3)) >= c-d+1, X admissible",
                    false, Rational(0)};
        if (xsize && d % 2 == 0 && d >= 2 && d <= c + 1 && *xsize >= 0 && *xsize <= 2 * l + d - 1) {
            const std::int64_t x = *xsize;
            e.applicable = true;
            const Rational frac(static_cast<std::int64_t>(2 * l + d - 2) * (d - 2), (d - 2) * x + 2 * l);
            e.value = Rational(x * C2(2 * d - 2)) * (Rational(1) - frac);
        }
        out.push_back(e);
    }

    {
        MenuEntry e{"even_shifted_x", "d even in [2,c+1], shifted, d(F) = d, nu(F cap C([2l+d,n],3)) >= c-d+1",
                    d % 2 == 0 && d >= 2 && d <= c + 1, Rational(0)};
        if (e.applicable) {
            const Rational denom = Rational(1) + Rational(static_cast<std::int64_t>(d - 2) * (d - 2),
                                                          2 * static_cast<std::int64_t>(l) * (d - 1));
            e.value = Rational(static_cast<std::int64_t>(2 * l + d - 2) * (2 * d - 3)) / denom;
        }
        out.push_back(e);
    }

    out.push_back({"large_d", "shifted, nu < s, d(F) >= c+2", d >= c + 2,
                   Rational(static_cast<std::int64_t>(2 * l + c) * (2 * c - 1))});

    out.push_back({"paired_prefix",
                   "d in [2,c], shifted, nu < s, {i,2l+d+1-i} in F for i in [l], nu(F cap C([2l+d+1,n],3)) >= c-d",
                   d >= 2 && d <= c, Rational(static_cast<std::int64_t>(2 * d - 1) * (s + 2 * c - 2 * d) + 1)});

    out.push_back({"triple_packing", "d in [1,c], nu(F cap C([2l+d,n],3)) < c-d+1", d >= 1 && d <= c,
                   d >= 1 && d <= c ? packing_term(c, d, 6) : Rational(0)});
    return out;
}

std::vector<BoundReport> audit_family(const Family& f, const Params& p) {
    if (f.n() != p.n) {
        throw std::invalid_argument("family ground set differs from n");
    }
    const int l = p.l;
    const int c = p.c;
    const int s = p.s;
    const int n = p.n;
    std::vector<BoundReport> out;

    const bool no_empty = !f.contains(0);
    bool no_singletons = true;
    for (int k = 1; k <= n; ++k) no_singletons = no_singletons && !f.contains(element_bit(k));
    const bool shifted = is_shifted(f);
    const bool upset = is_upset(f);
    const bool nu_ok = no_empty && !has_s_matching(f, s).has_value();
    out.push_back(make_report("pre.shifted", true, Rational(1), shifted ? 1 : 0));
    out.push_back(make_report("pre.upset", true, Rational(1), upset ? 1 : 0));
    out.push_back(make_report("pre.no_empty_set", true, Rational(1), no_empty ? 1 : 0));
    out.push_back(make_report("pre.no_singletons", true, Rational(1), no_singletons ? 1 : 0));
    out.push_back(make_report("pre.no_s_matching", true, Rational(1), nu_ok ? 1 : 0));
    if (!no_empty) return out;

    const auto y = y_profile(f);
    const auto y2 = static_cast<std::int64_t>(y[2]);
    const auto y3 = n >= 3 ? static_cast<std::int64_t>(y[3]) : 0;
    int d = 0;
    try {
        d = d_of(f, p);
    } catch (const std::domain_error&) {
        out.push_back(make_report("d.defined", true, Rational(1), 0, "pair condition never holds inside [n]"));
        return out;
    }

    out.push_back(make_report("d.at_most_2c", nu_ok, Rational(0), 2 * c - d, "observed is 2c - d(F)"));

    // Best single missing pair.
    {
        std::uint64_t best = 0;
        bool any = false;
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                if (!f.contains(pair_of(i, j))) {
                    any = true;
                    best = std::max(best, shiftable_pair_count(n, i, j));
                }
            }
        }
        out.push_back(make_report("y2.missing_pair", shifted && any, Rational(static_cast<std::int64_t>(best)), y2));
    }

    {
        const int nu2 = nu_of(layer_within(f, 2, 1, n));
        const auto eg = std::min(binom(n - s + 1, 2), binom(n, 2) - binom(2 * s - 1, 2));
        out.push_back(make_report("y2.erdos_gallai", nu2 < s && n >= 2 * s, Rational(static_cast<std::int64_t>(eg)), y2));
    }

    if (d % 2 == 0) {
        out.push_back(make_report("y2.even_d", shifted, y2_lower(l, c, d, ParityMode::Even), y2));
    } else {
        out.push_back(make_report("y2.odd_d", shifted && d <= 2 * c,
                                  d <= 2 * c ? y2_lower(l, c, d, ParityMode::Odd) : Rational(0), y2));
    }
    out.push_back(make_report("y2.combined", shifted && d <= 2 * c, y2_lower(l, c, d, ParityMode::Combined), y2,
                              "smaller of the two expressions with ceil(d/2); the larger one is not a valid bound"));

    {
        const bool hyp = shifted && upset && no_singletons && d <= 2 * c;
        Rational bound(0);
        if (d <= 2 * c) {
            const CompSizes cs = comp_sizes(formula_params(s, c));
            const Y2Gap gap = y2_gap(l, c, d);
            bound = std::min(Rational(cs.Pprime) - gap.pprime, Rational(cs.P) - gap.p);
        }
        out.push_back(make_report("y012.gap", hyp, bound, static_cast<std::int64_t>(y[0] + y[1] + y[2]),
                                  "observed y(0)+y(1)+y(2) meets one of the two slack budgets"));
    }

    if (n < 3) return out;

    out.push_back(make_report("y3.outer_matching", d > 0 && nu_ok,
                              Rational(static_cast<std::int64_t>(binom(3 * c - 1, 2))), y3));

    // Triples inside the tail [2l+d', n] and their packing number, per d'.
    const auto tail_nu = [&](int start) { return nu_of(layer_within(f, 3, start, n)); };

    for (int dd = 1; dd <= c; ++dd) {
        const Family tail = layer_within(f, 3, 2 * l + dd, n);
        const int g = nu_of(tail);
        const int width = n - (2 * l + dd) + 1;
        out.push_back(make_report(with_d("y3.triple_packing", dd), g < c - dd + 1, packing_term(c, dd, 6), y3,
                                  kPackingDenominatorNote));
        const auto all = static_cast<std::int64_t>(binom(width, 3));
        const auto cap = static_cast<std::int64_t>(g) * static_cast<std::int64_t>(binom(width - 1, 2));
        out.push_back(make_report(with_d("y3.uniform_packing", dd), width >= 3 * (g + 1), Rational(all - cap),
                                  all - static_cast<std::int64_t>(tail.size()),
                                  "observed counts missing triples of the tail"));
    }

    for (int dd = 1; dd <= c + 1; dd += 2) {
        const bool hyp = shifted && nu_ok && d >= dd && tail_nu(2 * l + dd) >= c - dd + 1;
        out.push_back(make_report(with_d("y3.odd_random_matching", dd), hyp,
                                  Rational(static_cast<std::int64_t>(2 * l + dd - 1) * (2 * dd - 3)), y3));
    }

    for (int dd = 2; dd <= c + 1; dd += 2) {
        const bool base = nu_ok && d >= dd && tail_nu(2 * l + dd) >= c - dd + 1;
        const int top = 2 * l + dd - 1;
        int xsize = 0;
        if (base) {
            const int need = l + (dd - 2) / 2;
            for (int x = 1; x <= top; ++x) {
                std::vector<SetMask> pairs;
                for (SetMask m : layer_within(f, 2, 1, top)) {
                    if (!has_element(m, x)) pairs.push_back(m);
                }
                if (nu_of(Family::from_canonical(n, std::move(pairs))) >= need) ++xsize;
            }
        }
        const auto menu = y3_lower_menu(l, c, dd, xsize);
        out.push_back(make_report(with_d("y3.even_random_matching", dd), base, menu[2].value, y3,
                                  "X is every admissible x, found with the exact solver; |X| = " + std::to_string(xsize)));
        out.push_back(make_report(with_d("y3.even_shifted_x", dd), base && shifted && d == dd, menu[3].value, y3));
    }

    out.push_back(make_report("y3.large_d", shifted && nu_ok && d >= c + 2,
                              Rational(static_cast<std::int64_t>(2 * l + c) * (2 * c - 1)), y3));

    for (int dd = 2; dd <= c; ++dd) {
        bool prefix = true;
        for (int i = 1; i <= l; ++i) prefix = prefix && f.contains(pair_of(i, 2 * l + dd + 1 - i));
        const bool hyp = shifted && nu_ok && prefix && tail_nu(2 * l + dd + 1) >= c - dd;
        out.push_back(make_report(with_d("y3.paired_prefix", dd), hyp,
                                  Rational(static_cast<std::int64_t>(2 * dd - 1) * (s + 2 * c - 2 * dd) + 1), y3));
    }
    return out;
}

std::optional<std::string> first_violation(const std::vector<BoundReport>& reports) {
    for (const auto& r : reports) {
        if (r.name.rfind("pre.", 0) == 0) continue;
        if (!r.holds) return r.name;
    }
    return std::nullopt;
}

ClaimCell claim_a2_cell(int c, int d, int l) {
    if (d % 2 != 1) {
        throw std::invalid_argument("the disjunction concerns odd d");
    }
    const std::int64_t L = l;
    const std::int64_t C = c;
    const std::int64_t D = d;
    const std::int64_t rhs = (4 * L + 3 * C + D - 7) * (3 * C - D + 2);
    ClaimCell cell{c, d, l, false, false};
    cell.first = (4 * L + 3 * C + D - 2) * (3 * C - D + 1) < rhs;
    cell.second = (L + 3 * C - (D - 1) / 2) * (L + 3 * C - (D + 1) / 2) < rhs;
    return cell;
}

ClaimA2Result check_claim_A2(int c_max) {
    if (c_max < 1) {
        throw std::invalid_argument("c_max must be positive");
    }
    ClaimA2Result r;
    for (int c = 1; c <= c_max; ++c) {
        for (int d = 1; d <= 2 * c; d += 2) {
            for (int l = 1; l <= 12 * c + 12; ++l) {
                if (l + (d + 1) / 2 < 4) continue;
                const ClaimCell cell = claim_a2_cell(c, d, l);
                ++r.cells;
                if (!cell.first && !cell.second) {
                    r.ok = false;
                    r.counterexample = cell;
                    return r;
                }
            }
        }
    }
    return r;
}

Rational f_endpoint_fn(int l, int c, int d, int den) {
    return packing_term(c, d, den) + y2_first(l, c, d);
}

Rational g_endpoint_fn(int l, int c, int d, int den) {
    // (l+3c-d/2+1/2)(l+3c-d/2-1/2)/2 = ((2l+6c-d)^2 - 1)/8
    const std::int64_t t = 2 * static_cast<std::int64_t>(l) + 6 * c - d;
    return packing_term(c, d, den) + Rational(t * t - 1, 8);
}

FgReport fg_endpoints(int l, int c) {
    if (l < 1 || c < 1) {
        throw std::invalid_argument("fg_endpoints needs l, c >= 1");
    }
    const Params p = formula_params(l + c, c);
    const Y23Totals yt = y23_totals(p);
    FgReport r;
    r.f_c_equals_yQ = f_endpoint_fn(l, c, c) == Rational(yt.Q);
    r.f0_minus_yPprime = f_endpoint_fn(l, c, 0) - Rational(yt.Pprime);
    r.printed_f0_gap = Rational(3 * static_cast<std::int64_t>(c) * (3 * c - 1), 2);
    r.printed_gap_matches_half = f_endpoint_fn(l, c, 0, 2) - Rational(yt.Pprime) == r.printed_f0_gap;
    r.f0_above_yPprime = r.f0_minus_yPprime > Rational(0);
    r.f_concave = true;
    r.g_concave = true;
    for (int d = 1; d <= c - 1; ++d) {
        const Rational f2 = f_endpoint_fn(l, c, d + 1) - Rational(2) * f_endpoint_fn(l, c, d) + f_endpoint_fn(l, c, d - 1);
        const Rational g2 = g_endpoint_fn(l, c, d + 1) - Rational(2) * g_endpoint_fn(l, c, d) + g_endpoint_fn(l, c, d - 1);
        r.f_concave = r.f_concave && f2 <= Rational(0);
        r.g_concave = r.g_concave && g2 <= Rational(0);
    }
    r.ok = r.f_c_equals_yQ && r.f0_above_yPprime && r.f_concave && r.g_concave;
    r.note = kPackingDenominatorNote;
    return r;
}

}  // namespace matchfree

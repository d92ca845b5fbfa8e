#include "matchfree/formulas.hpp"

#include <algorithm>
#include <sstream>

namespace matchfree {

namespace {

std::int64_t c2(std::int64_t n) { return static_cast<std::int64_t>(binom(n, 2)); }

}  // namespace

std::int64_t exact_div(std::int64_t num, std::int64_t den) {
    if (den == 0 || num % den != 0) {
        throw std::domain_error("non-integral intermediate: " + std::to_string(num) + "/" + std::to_string(den));
    }
    return num / den;
}

std::int64_t CompSizes::of(FamilyKind kind) const {
    switch (kind) {
        case FamilyKind::P: return P;
        case FamilyKind::Pprime: return Pprime;
        case FamilyKind::Q: return Q;
        case FamilyKind::W: return W;
    }
    return 0;
}

CompSizes comp_sizes(const Params& p) {
    const std::int64_t s = p.s;
    const std::int64_t c = p.c;
    CompSizes r;
    r.P = c2(s + 2 * c + 1) + p.n + 1;
    r.Pprime = (6 * c + 4) * s - exact_div(3 * c * c + 5 * c, 2);
    r.Q = (4 * c + 4) * s + exact_div(4 * c * c * c - 4 * c, 3);
    if (c + 2 >= 120) {
        r.W = INT64_MAX;
    } else {
        const unsigned __int128 w = (static_cast<unsigned __int128>(1) << (c + 2)) * static_cast<unsigned __int128>(s);
        r.W = w > static_cast<unsigned __int128>(INT64_MAX) ? INT64_MAX : static_cast<std::int64_t>(w);
    }
    return r;
}

Y23Totals y23_totals(const Params& p) {
    const std::int64_t l = p.l;
    const std::int64_t c = p.c;
    Y23Totals r;
    r.P = c2(l + 3 * c + 1);
    r.Pprime = exact_div((4 * l + 3 * c - 2) * (3 * c + 1), 2);
    r.Q = (4 * c + 2) * l + exact_div(4 * c * c * c + 12 * c * c - c - 3, 3);
    return r;
}

std::int64_t w_leq3(const Params& p) {
    const std::int64_t s = p.s;
    const std::int64_t c = p.c;
    return (c * c + 3 * c + 4) * s + exact_div(c * c * c - c, 6);
}

NKM nkm_minima(const Params& p) {
    const CompSizes v = comp_sizes(p);
    NKM r;
    r.M = std::min({v.P, v.Pprime, v.Q});
    r.N = std::min(r.M, v.W);
    r.K = std::min(r.M, w_leq3(p));
    return r;
}

std::string RegimeVerdict::winners_label() const {
    std::string out;
    for (FamilyKind k : winners) {
        if (!out.empty()) out += '|';
        out += kind_name(k);
    }
    return out;
}

RegimeVerdict regime_classify(const Params& p) {
    RegimeVerdict r;
    r.values = comp_sizes(p);
    const std::int64_t best = nkm_minima(p).N;
    for (FamilyKind k : kAllKinds) {
        if (r.values.of(k) == best) r.winners.push_back(k);
    }
    return r;
}

bool threshold_pprime_vs_p(const Params& p) {
    if (p.l < 2) {
        throw std::invalid_argument("threshold comparison requires l >= 2");
    }
    const CompSizes v = comp_sizes(p);
    return v.Pprime <= v.P;
}

std::int64_t kleitman_value(int n, int s) {
    if (s < 1 || n < 1) {
        throw std::invalid_argument("kleitman_value requires n, s >= 1");
    }
    std::int64_t total = 0;
    if ((n + 1) % s == 0) {
        const int m = (n + 1) / s;
        for (int t = m; t <= n; ++t) total += static_cast<std::int64_t>(binom(n, t));
        return total;
    }
    if (n % s == 0) {
        const int m = n / s;
        total = static_cast<std::int64_t>(binom(n - 1, m));
        for (int t = m + 1; t <= n; ++t) total += static_cast<std::int64_t>(binom(n, t));
        return total;
    }
    throw std::invalid_argument("kleitman_value requires n = sm - 1 or n = sm");
}

std::string regime_map_csv(int s_max) {
    std::ostringstream out;
    out << "s,c,l,n,compP,compPprime,compQ,compW,winners\n";
    for (int s = 2; s <= s_max; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= kMaxGround; ++c) {
            const Params p = make_params(s, c);
            const RegimeVerdict v = regime_classify(p);
            out << p.s << ',' << p.c << ',' << p.l << ',' << p.n << ',' << v.values.P << ',' << v.values.Pprime << ','
                << v.values.Q << ',' << v.values.W << ',' << v.winners_label() << '\n';
        }
    }
    return out.str();
}

}  // namespace matchfree

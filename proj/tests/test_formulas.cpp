#include <doctest.h>

#include <sstream>

#include "matchfree/constructions.hpp"
#include "matchfree/formulas.hpp"

using namespace matchfree;

namespace {

std::int64_t missing_total(const ProfileFamily& pf) {
    std::int64_t t = 0;
    for (auto v : pf.missing_per_layer()) t += static_cast<std::int64_t>(v);
    return t;
}

}  // namespace

TEST_CASE("comp_sizes examples") {
    CHECK(comp_sizes(make_params(3, 1)) == CompSizes{23, 26, 24, 24});
    CHECK(comp_sizes(make_params(5, 1)) == CompSizes{40, 46, 40, 40});
    CHECK(comp_sizes(make_params(2, 1)) == CompSizes{16, 16, 16, 16});
    CHECK(comp_sizes(make_params(4, 2)) == CompSizes{47, 53, 56, 64});
    CHECK(kleitman_value(5, 2) == 32 - 16);
}

TEST_CASE("y23_totals examples") {
    CHECK(y23_totals(make_params(3, 1)) == Y23Totals{15, 18, 16});
    CHECK(y23_totals(make_params(5, 1)) == Y23Totals{28, 34, 28});
}

TEST_CASE("w_leq3 examples") {
    CHECK(w_leq3(make_params(3, 1)) == 24);
    CHECK(w_leq3(make_params(4, 2)) == 57);
    const auto y = profile_of(FamilyKind::W, make_params(4, 2)).missing_per_layer();
    CHECK(static_cast<std::int64_t>(y[0] + y[1] + y[2] + y[3]) == 57);
}

TEST_CASE("nkm_minima examples") {
    CHECK(nkm_minima(make_params(3, 1)) == NKM{23, 23, 23});
    const NKM a = nkm_minima(make_params(4, 2));
    CHECK(a.N == 47);
    CHECK(a.K == 47);
    CHECK(a.N > nkm_minima(make_params(5, 1)).N);
}

TEST_CASE("regime_classify examples") {
    CHECK(regime_classify(make_params(5, 1)).winners_label() == "P|Q|W");
    CHECK(regime_classify(make_params(3, 1)).winners_label() == "P");
    const RegimeVerdict v = regime_classify(make_params(20, 2));
    CHECK(v.values == CompSizes{343, 309, 248, 320});
    CHECK(v.winners_label() == "Q");
}

TEST_CASE("threshold examples") {
    CHECK(threshold_pprime_vs_p(make_params(9, 1)));
    CHECK(comp_sizes(make_params(9, 1)).P == 86);
    CHECK(comp_sizes(make_params(9, 1)).Pprime == 86);
    CHECK_FALSE(threshold_pprime_vs_p(make_params(8, 1)));
    CHECK(comp_sizes(make_params(8, 1)).Pprime == 76);
    CHECK(comp_sizes(make_params(8, 1)).P == 73);
    CHECK_THROWS_AS((void)threshold_pprime_vs_p(make_params(3, 2)), std::invalid_argument);
    for (int s = 4; s <= 60; ++s) CHECK(threshold_pprime_vs_p(formula_params(s, 2)) == (s >= 16));
}

TEST_CASE("kleitman_value examples") {
    CHECK(kleitman_value(5, 2) == 16);
    CHECK(kleitman_value(6, 2) == 32);
    CHECK(kleitman_value(6, 3) == 52);
    CHECK_THROWS_AS((void)kleitman_value(7, 3), std::invalid_argument);
}

TEST_CASE("exact_div") {
    CHECK(exact_div(12, 4) == 3);
    CHECK_THROWS_AS((void)exact_div(7, 2), std::domain_error);
    CHECK_THROWS_AS((void)exact_div(7, 0), std::domain_error);
}

TEST_CASE("regime map csv") {
    const std::string csv = regime_map_csv(12);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "s,c,l,n,compP,compPprime,compQ,compW,winners");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 66);
    CHECK(csv.find("\n5,1,4,11,40,46,40,40,P|Q|W\n") != std::string::npos);
    CHECK(regime_map_csv(12) == csv);
}

TEST_CASE("property: closed-form complements equal per-layer counts for n <= 62") {
    for (int s = 2; 2 * s + 1 <= 62; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= 62; ++c) {
            const Params p = make_params(s, c);
            const CompSizes v = comp_sizes(p);
            for (FamilyKind k : kAllKinds) {
                REQUIRE(missing_total(profile_of(k, p)) == v.of(k));
            }
        }
    }
}

TEST_CASE("property: closed-form complements equal enumeration for n <= 18") {
    for (int s = 2; 2 * s + 1 <= 18; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= 18; ++c) {
            const Params p = make_params(s, c);
            const CompSizes v = comp_sizes(p);
            for (FamilyKind k : kAllKinds) {
                REQUIRE((std::int64_t{1} << p.n) - static_cast<std::int64_t>(family_of(k, p).size()) == v.of(k));
            }
        }
    }
}

TEST_CASE("property: y23 totals equal layer counts for n <= 62") {
    for (int s = 2; 2 * s + 1 <= 62; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= 62; ++c) {
            const Params p = make_params(s, c);
            const Y23Totals t = y23_totals(p);
            const auto y = [&](FamilyKind k) {
                const auto m = profile_of(k, p).missing_per_layer();
                return static_cast<std::int64_t>(m[2] + m[3]);
            };
            REQUIRE(t.P == y(FamilyKind::P));
            REQUIRE(t.Pprime == y(FamilyKind::Pprime));
            REQUIRE(t.Q == y(FamilyKind::Q));
            const auto w = profile_of(FamilyKind::W, p).missing_per_layer();
            REQUIRE(w_leq3(p) == static_cast<std::int64_t>(w[0] + w[1] + w[2] + w[3]));
        }
    }
}

TEST_CASE("property: threshold s >= 7c + 2 on the grid s <= 60") {
    for (int s = 3; s <= 60; ++s) {
        for (int c = 1; c <= s - 2; ++c) {
            REQUIRE(threshold_pprime_vs_p(formula_params(s, c)) == (s >= 7 * c + 2));
        }
    }
}

// The gap formula is the distance to the P' complement; it has no s^2 term,
// so it cannot measure the distance to the P complement.
TEST_CASE("property: W-gap identity and the W lower-layer bound") {
    for (int s = 2; s <= 60; ++s) {
        for (int c = 1; c <= s - 1; ++c) {
            const Params p = formula_params(s, c);
            const CompSizes v = comp_sizes(p);
            const std::int64_t S = s;
            const std::int64_t C = c;
            REQUIRE(w_leq3(p) - v.Pprime == (C * C - 3 * C) * S + exact_div(C * C * C + 9 * C * C + 14 * C, 6));
            REQUIRE(w_leq3(p) >= std::min(v.P, v.Q));
        }
    }
}

TEST_CASE("property: M drops when s grows by one and l by two") {
    for (int s = 3; s <= 40; ++s) {
        for (int l = 3; l <= s - 1; ++l) {
            const int c = s - l;
            const Params big = formula_params(s, c);
            const Params small = formula_params(s - 1, c + 1);
            REQUIRE(nkm_minima(small).M > nkm_minima(big).M);
        }
    }
}

TEST_CASE("property: with l = 1 the P and P' complements coincide") {
    for (int s = 2; s <= 60; ++s) REQUIRE(comp_sizes(formula_params(s, s - 1)).P == comp_sizes(formula_params(s, s - 1)).Pprime);
}

TEST_CASE("property: P' is never among the winners for c <= 9 when l >= 2 on the grid") {
    for (int s = 3; s <= 60; ++s) {
        for (int c = 1; c <= std::min(9, s - 2); ++c) {
            const RegimeVerdict v = regime_classify(formula_params(s, c));
            for (FamilyKind k : v.winners) REQUIRE(k != FamilyKind::Pprime);
        }
    }
}

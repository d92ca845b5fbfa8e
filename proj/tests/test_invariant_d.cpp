#include <doctest.h>

#include <random>

#include "matchfree/constructions.hpp"
#include "matchfree/formulas.hpp"
#include "matchfree/invariant_d.hpp"
#include "matchfree/sampling.hpp"
#include "oracles.hpp"

using namespace matchfree;

namespace {

// Parameter cells with n <= 8.
constexpr std::pair<int, int> kSmallCells[] = {{2, 1}, {3, 1}, {3, 2}};

const BoundReport* find(const std::vector<BoundReport>& rs, const std::string& name) {
    for (const auto& r : rs) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

std::int64_t layer_missing(const Family& f, int k) { return static_cast<std::int64_t>(y_profile(f)[k]); }

}  // namespace

TEST_CASE("d of the generators at (3,1)") {
    const Params p = make_params(3, 1);
    CHECK(d_of(family_P(3, 1), p) == 0);
    CHECK(d_of(family_Q(3, 1), p) == 1);
    CHECK(d_of(family_W(3, 1), p) == 2);
    CHECK(d_of(family_Pprime(3, 1), p) == 0);
    CHECK_THROWS_AS((void)d_of(family_P(3, 1), make_params(3, 2)), std::invalid_argument);
    std::vector<SetMask> all;
    for (SetMask m = 1; m < 128; ++m) all.push_back(m);
    CHECK_THROWS_AS((void)d_of(Family(7, all), p), std::domain_error);
}

TEST_CASE("d of the generators for n <= 24, and the profile form agrees with materialization") {
    for (int s = 2; 2 * s + 1 <= 24; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= 24; ++c) {
            const Params p = make_params(s, c);
            REQUIRE(d_of(profile_of(FamilyKind::P, p), p) == 0);
            REQUIRE(d_of(profile_of(FamilyKind::Pprime, p), p) == 0);
            REQUIRE(d_of(profile_of(FamilyKind::Q, p), p) == c);
            REQUIRE(d_of(profile_of(FamilyKind::W, p), p) == 2 * c);
            if (p.n <= 16) {
                for (FamilyKind k : kAllKinds) REQUIRE(d_of(family_of(k, p), p) == d_of(profile_of(k, p), p));
            }
        }
    }
}

TEST_CASE("monotone_condition examples") {
    const Params p = make_params(3, 1);
    CHECK(monotone_condition(family_Q(3, 1), p, 1));
    CHECK(monotone_condition(family_Q(3, 1), p, 2));
    CHECK(monotone_condition(family_P(3, 1), p, 0));
    CHECK_THROWS_AS((void)monotone_condition(family_P(3, 1), p, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)monotone_condition(family_P(3, 1), p, -1), std::invalid_argument);
}

TEST_CASE("the pair condition holds above d(F), not below it") {
    // Read with the inequality reversed, the persistence statement would
    // need the condition at every d <= d(F); W(3,1) has d(F) = 2 and fails at 0.
    const Params p = make_params(3, 1);
    const Family w = family_W(3, 1);
    CHECK(d_of(w, p) == 2);
    CHECK_FALSE(monotone_condition(w, p, 0));
    for (int d = 2; 2 * p.l + d <= p.n; ++d) CHECK(monotone_condition(w, p, d));
}

TEST_CASE("y2_lower examples") {
    CHECK(y2_lower(2, 1, 0, ParityMode::Even) == Rational(15));
    CHECK(y2_lower(2, 1, 1, ParityMode::Odd) == Rational(10));
    CHECK_THROWS_AS((void)y2_lower(2, 1, 1, ParityMode::Even), std::invalid_argument);
    CHECK_THROWS_AS((void)y2_lower(2, 1, 2, ParityMode::Odd), std::invalid_argument);
    CHECK_THROWS_AS((void)y2_lower(2, 1, 3, ParityMode::Odd), std::invalid_argument);
    CHECK_THROWS_AS((void)y2_lower(2, 1, -2, ParityMode::Even), std::invalid_argument);
}

TEST_CASE("y2 bound at d = 0 is the smaller of the P' and P pair deficits") {
    for (int s = 2; 2 * s + 1 <= 62; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= 62; ++c) {
            const Params p = make_params(s, c);
            const auto yp = static_cast<std::int64_t>(profile_of(FamilyKind::P, p).missing_per_layer()[2]);
            const auto ypp = static_cast<std::int64_t>(profile_of(FamilyKind::Pprime, p).missing_per_layer()[2]);
            REQUIRE(y2_lower(p.l, c, 0, ParityMode::Even) == Rational(std::min(yp, ypp)));
        }
    }
}

TEST_CASE("combined y2 bound equals the parity bound; the larger expression is not a bound") {
    for (int l = 1; l <= 20; ++l) {
        for (int c = 1; c <= 10; ++c) {
            for (int d = 0; d <= 2 * c; ++d) {
                const ParityMode m = d % 2 == 0 ? ParityMode::Even : ParityMode::Odd;
                REQUIRE(y2_lower(l, c, d, ParityMode::Combined) == y2_lower(l, c, d, m));
            }
        }
    }
    // At d = 0 the two expressions are 18 and 15 while P(3,1) misses 15 pairs.
    CHECK(layer_missing(family_P(3, 1), 2) == 15);
    CHECK(Rational((4 * 2 + 3 - 2) * 4, 2) == Rational(18));
}

TEST_CASE("y2_gap examples") {
    CHECK(y2_gap(2, 1, 0).pprime == Rational(0));
    CHECK(y2_gap(2, 1, 0).p == Rational(0));
    CHECK(y2_gap(2, 1, 2).pprime == Rational(7));
    CHECK(y2_gap(2, 1, 2).p == Rational(5));
    CHECK(y2_gap(2, 1, 1).pprime == Rational(3));
    CHECK(y2_gap(2, 1, 1).p == Rational(5));
    CHECK_THROWS_AS((void)y2_gap(2, 1, 3), std::invalid_argument);
}

TEST_CASE("y3 menu examples") {
    const auto m = y3_lower_menu(2, 1, 1);
    REQUIRE(m.size() == 7);
    CHECK(m[0].name == "outer_matching");
    CHECK(m[0].value == Rational(1));
    CHECK(m[0].applicable);
    CHECK(y3_lower_menu(2, 3, 1)[0].value == Rational(28));
    const auto odd = y3_lower_menu(2, 2, 3);
    CHECK(odd[1].name == "odd_random_matching");
    CHECK(odd[1].applicable);
    CHECK(odd[1].value == Rational(18));
    CHECK_FALSE(y3_lower_menu(2, 1, 3)[1].applicable);
    for (int c = 1; c <= 10; ++c) {
        const auto e = y3_lower_menu(3, c, c)[6];
        CHECK(e.name == "triple_packing");
        CHECK(e.value == Rational(static_cast<std::int64_t>(2 * c + 1) * (2 * c) * (2 * c - 1), 6));
    }
    const auto even = y3_lower_menu(2, 3, 4, 6);
    CHECK(even[2].applicable);
    CHECK(even[2].value == Rational(6 * 15) * (Rational(1) - Rational(6 * 2, 2 * 6 + 4)));
    CHECK_FALSE(y3_lower_menu(2, 3, 4)[2].applicable);
    CHECK(even[3].value == Rational(6 * 5) / (Rational(1) + Rational(4, 12)));
    CHECK(y3_lower_menu(2, 1, 3)[4].value == Rational(5));
    CHECK(y3_lower_menu(2, 3, 2)[5].value == Rational(3 * 7 + 1));
    CHECK_FALSE(y3_lower_menu(2, 3, 0)[0].applicable);
}

TEST_CASE("audit examples") {
    const Params p = make_params(3, 1);
    const auto q = audit_family(family_Q(3, 1), p);
    CHECK_FALSE(first_violation(q).has_value());
    REQUIRE(find(q, "y2.odd_d") != nullptr);
    CHECK(find(q, "y2.odd_d")->hypothesis_ok);
    CHECK(find(q, "y2.odd_d")->bound <= Rational(15));
    CHECK(find(q, "y2.odd_d")->observed == 15);
    REQUIRE(find(q, "y3.outer_matching") != nullptr);
    CHECK(find(q, "y3.outer_matching")->bound == Rational(1));
    CHECK(find(q, "y3.outer_matching")->observed == 1);
    CHECK(find(q, "y3.triple_packing[d=1]")->note == kPackingDenominatorNote);

    const auto a = audit_family(family_P(3, 1), p);
    CHECK_FALSE(first_violation(a).has_value());
    CHECK(find(a, "y2.even_d")->bound == Rational(15));
    CHECK(find(a, "y2.even_d")->observed == 15);

    // A family violating the preconditions is reported, not rejected.
    const auto bad = audit_family(Family(7, {{1}, {2, 3}}), p);
    CHECK(find(bad, "pre.shifted")->observed == 0);
    CHECK(find(bad, "pre.no_singletons")->observed == 0);
    const auto empty = audit_family(Family(7, {make_set({})}), p);
    CHECK(find(empty, "pre.no_empty_set")->observed == 0);
}

TEST_CASE("audits of the generators report no violation") {
    for (int s = 2; 2 * s + 1 <= 14; ++s) {
        for (int c = 1; c <= s - 1 && 2 * s + c <= 14; ++c) {
            const Params p = make_params(s, c);
            for (FamilyKind k : kAllKinds) {
                const auto r = audit_family(family_of(k, p), p);
                for (const auto& e : r) {
                    if (e.name.rfind("pre.", 0) == 0) REQUIRE(e.observed == 1);
                }
                const auto v = first_violation(r);
                INFO(kind_name(k), " s=", s, " c=", c);
                REQUIRE_FALSE(v.has_value());
            }
        }
    }
}

TEST_CASE("property: random shifted up-sets without s-matchings") {
    std::mt19937_64 rng(31337);
    int with_positive_d = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [s, c] = kSmallCells[trial % 3];
        const Params p = make_params(s, c);
        const Family f = random_shifted_upset(rng, p.n, s);
        REQUIRE(is_shifted(f));
        REQUIRE(is_upset(f));
        REQUIRE(oracle::brute_nu(f) < s);
        const int d = d_of(f, p);
        REQUIRE(d <= 2 * c);
        for (int e = d; 2 * p.l + e <= p.n; ++e) REQUIRE(monotone_condition(f, p, e));
        const ParityMode mode = d % 2 == 0 ? ParityMode::Even : ParityMode::Odd;
        REQUIRE(Rational(layer_missing(f, 2)) >= y2_lower(p.l, c, d, mode));
        if (d > 0) {
            ++with_positive_d;
            REQUIRE(layer_missing(f, 3) >= static_cast<std::int64_t>(binom(3 * c - 1, 2)));
        }
        const auto r = audit_family(f, p);
        const auto v = first_violation(r);
        INFO("trial ", trial, " violation ", v.value_or(""));
        REQUIRE_FALSE(v.has_value());
    }
    CHECK(with_positive_d > 0);
}

TEST_CASE("property: shift closures of random families without s-matchings satisfy d <= 2c") {
    std::mt19937_64 rng(4242);
    int used = 0;
    for (int trial = 0; used < 300 && trial < 20000; ++trial) {
        const auto [s, c] = kSmallCells[trial % 3];
        const Params p = make_params(s, c);
        const Family f = shift_closure(oracle::random_family(rng, p.n, 0.05 + 0.02 * (trial % 5)));
        if (has_s_matching(f, s)) continue;
        ++used;
        const int d = d_of(f, p);
        REQUIRE(d <= 2 * c);
        for (int e = d; 2 * p.l + e <= p.n; ++e) REQUIRE(monotone_condition(f, p, e));
        REQUIRE_FALSE(first_violation(audit_family(f, p)).has_value());
    }
    CHECK(used == 300);
}

TEST_CASE("odd-d disjunction") {
    const ClaimA2Result r = check_claim_A2(10);
    CHECK(r.ok);
    CHECK_FALSE(r.counterexample.has_value());
    CHECK(r.cells > 0);
    const ClaimCell cell = claim_a2_cell(3, 5, 2);
    CHECK((cell.first || cell.second));
    CHECK_THROWS_AS((void)claim_a2_cell(3, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)check_claim_A2(0), std::invalid_argument);
}

TEST_CASE("endpoint functions") {
    CHECK(f_endpoint_fn(2, 1, 1) == Rational(16));
    CHECK(y23_totals(make_params(3, 1)).Q == 16);
    const FgReport one = fg_endpoints(2, 1);
    CHECK(one.ok);
    CHECK(one.printed_f0_gap == Rational(3));
    CHECK(one.printed_gap_matches_half);
    CHECK(one.f0_minus_yPprime == Rational(1));
    CHECK(one.note.find("/6") != std::string::npos);
    CHECK(packing_term(1, 1, 6) == Rational(1));
    CHECK(packing_term(1, 1, 2) == Rational(3));
    for (int l = 1; l <= 20; ++l) {
        for (int c = 1; c <= 10; ++c) {
            const FgReport r = fg_endpoints(l, c);
            REQUIRE(r.ok);
            REQUIRE(r.f_c_equals_yQ);
            REQUIRE(r.f0_minus_yPprime == Rational(static_cast<std::int64_t>(c) * (3 * c - 1), 2));
            REQUIRE(r.printed_gap_matches_half);
        }
    }
    const FgReport five = fg_endpoints(3, 5);
    CHECK(five.f_concave);
    CHECK(five.g_concave);
    CHECK_THROWS_AS((void)fg_endpoints(0, 1), std::invalid_argument);
}

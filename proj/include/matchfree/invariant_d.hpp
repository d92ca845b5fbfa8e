#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchfree/constructions.hpp"
#include "matchfree/rational.hpp"
#include "matchfree/setfam.hpp"

namespace matchfree {

/// Whether the pair condition defining d holds at exactly this d:
///   d even: {i, 2l+d+1-i} is missing for some i in [1, l + d/2];
///   d odd:  {1, 2l+d} is missing, or {i, 2l+d+2-i} is missing for some i in [3, l + (d+1)/2].
/// Requires 2l + d <= n.
[[nodiscard]] bool monotone_condition(const Family& f, const Params& p, int d);
[[nodiscard]] bool monotone_condition(const ProfileFamily& f, const Params& p, int d);

/// Least d >= 0 at which the pair condition holds. Throws std::domain_error
/// if no d with 2l + d <= n qualifies (impossible when nu(f) < s).
[[nodiscard]] int d_of(const Family& f, const Params& p);
[[nodiscard]] int d_of(const ProfileFamily& f, const Params& p);

enum class ParityMode { Even, Odd, Combined };

/// Lower bound on y(2) for a shifted family with the given d. Combined uses
/// ceil(d/2) and takes the smaller of the two expressions, which agrees with
/// the parity-specific bound for every d.
[[nodiscard]] Rational y2_lower(int l, int c, int d, ParityMode mode);

/// The two slack budgets relative to the complements of P' and P.
struct Y2Gap {
    Rational pprime;
    Rational p;
};
[[nodiscard]] Y2Gap y2_gap(int l, int c, int d);

struct MenuEntry {
    std::string name;
    std::string hypothesis;
    bool applicable = false;  ///< parameter ranges satisfied
    Rational value;
};

/// Every closed-form lower bound on y(3) for the parameters; entries whose
/// parameter ranges fail are kept with applicable = false.
[[nodiscard]] std::vector<MenuEntry> y3_lower_menu(int l, int c, int d, std::optional<int> xsize = std::nullopt);

struct BoundReport {
    std::string name;
    bool hypothesis_ok = false;
    Rational bound;
    std::int64_t observed = 0;
    bool holds = true;  ///< !hypothesis_ok || observed >= bound
    std::string note;
};

/// Runs every bound on y(2), y(3) and d against the family's own profile.
/// Preconditions appear first as "pre.*" entries (observed 1 if met).
[[nodiscard]] std::vector<BoundReport> audit_family(const Family& f, const Params& p);

/// Name of the first entry that has hypothesis_ok but fails, if any.
[[nodiscard]] std::optional<std::string> first_violation(const std::vector<BoundReport>& reports);

struct ClaimCell {
    int c = 0;
    int d = 0;
    int l = 0;
    bool first = false;   ///< the P'-side strict inequality
    bool second = false;  ///< the P-side strict inequality
};

/// Both strict inequalities of the odd-d disjunction at one cell.
[[nodiscard]] ClaimCell claim_a2_cell(int c, int d, int l);

struct ClaimA2Result {
    bool ok = true;
    std::int64_t cells = 0;
    std::optional<ClaimCell> counterexample;
};

/// All c <= c_max, odd d <= 2c, 1 <= l <= 12c + 12 with l + (d+1)/2 >= 4.
[[nodiscard]] ClaimA2Result check_claim_A2(int c_max);

/// The cubic packing term (2d+1)(3c-d)(3c-d-1)/den for den in {2, 6}.
[[nodiscard]] Rational packing_term(int c, int d, int den);
[[nodiscard]] Rational f_endpoint_fn(int l, int c, int d, int den = 6);
[[nodiscard]] Rational g_endpoint_fn(int l, int c, int d, int den = 6);

struct FgReport {
    bool f_c_equals_yQ = false;
    Rational f0_minus_yPprime;    ///< with the /6 packing term
    Rational printed_f0_gap;      ///< 3c(3c-1)/2 as printed
    bool printed_gap_matches_half = false;
    bool f0_above_yPprime = false;
    bool f_concave = false;
    bool g_concave = false;
    bool ok = false;
    std::string note;
};

[[nodiscard]] FgReport fg_endpoints(int l, int c);

inline constexpr const char* kPackingDenominatorNote =
    "packing term uses (2d+1)(3c-d)(3c-d-1)/6; one printed occurrence divides by 2, "
    "which contradicts C(3c-d+1,3) - (c-d)C(3c-d,2) and the f(c) = y_Q(2)+y_Q(3) identity";

}  // namespace matchfree

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matchfree/constructions.hpp"
#include "matchfree/setfam.hpp"

namespace matchfree {

/// Complement cardinalities 2^n - |family| of the four candidates. W saturates
/// at INT64_MAX once 2^(c+2) s no longer fits; it is never the minimum there.
struct CompSizes {
    std::int64_t P = 0;
    std::int64_t Pprime = 0;
    std::int64_t Q = 0;
    std::int64_t W = 0;

    [[nodiscard]] std::int64_t of(FamilyKind kind) const;
    friend bool operator==(const CompSizes&, const CompSizes&) = default;
};

[[nodiscard]] CompSizes comp_sizes(const Params& p);

/// y(2) + y(3) for P, P' and Q.
struct Y23Totals {
    std::int64_t P = 0;
    std::int64_t Pprime = 0;
    std::int64_t Q = 0;
    friend bool operator==(const Y23Totals&, const Y23Totals&) = default;
};

[[nodiscard]] Y23Totals y23_totals(const Params& p);

/// Number of sets of size <= 3 missing from W.
[[nodiscard]] std::int64_t w_leq3(const Params& p);

struct NKM {
    std::int64_t N = 0;  ///< min of the four complements
    std::int64_t K = 0;  ///< same with W replaced by its <= 3 layers
    std::int64_t M = 0;  ///< min over P, P', Q
    friend bool operator==(const NKM&, const NKM&) = default;
};

[[nodiscard]] NKM nkm_minima(const Params& p);

struct RegimeVerdict {
    std::vector<FamilyKind> winners;  ///< in the order P, Pprime, Q, W
    CompSizes values;

    /// Winners joined with '|', e.g. "P|Q|W".
    [[nodiscard]] std::string winners_label() const;
};

[[nodiscard]] RegimeVerdict regime_classify(const Params& p);

/// |complement of P'| <= |complement of P|. Requires l >= 2.
[[nodiscard]] bool threshold_pprime_vs_p(const Params& p);

/// Size of the largest family over [n] without s pairwise disjoint sets, for
/// n = sm - 1 or n = sm, as the explicit binomial sums.
[[nodiscard]] std::int64_t kleitman_value(int n, int s);

/// CSV header plus one row per (s, c) with 2 <= s <= s_max, 1 <= c <= s - 1, n <= 62.
[[nodiscard]] std::string regime_map_csv(int s_max);

/// Divides exactly or throws std::domain_error.
[[nodiscard]] std::int64_t exact_div(std::int64_t num, std::int64_t den);

}  // namespace matchfree

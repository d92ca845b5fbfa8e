#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "matchfree/constructions.hpp"
#include "matchfree/setfam.hpp"

namespace matchfree {

enum class OracleMode { FullIhs, Shifted, Truncated };

[[nodiscard]] std::string_view mode_name(OracleMode mode);
/// Accepts "full", "shifted", "truncated".
[[nodiscard]] OracleMode parse_mode(std::string_view name);

inline constexpr int kFullIhsLimit = 6;
inline constexpr int kShiftedLimit = 9;
inline constexpr int kTruncatedLimit = 10;
inline constexpr int kUniformLimit = 12;

/// The search universe is every nonempty subset of [n] of size <= max_layer.
/// value is the largest family in that universe without an s-matching and
/// blocker the sets it leaves out, so value + |blocker| = |universe|.
struct OracleResult {
    int n = 0;
    int s = 0;
    int max_layer = 0;
    OracleMode mode = OracleMode::Shifted;
    std::int64_t value = 0;
    std::int64_t universe = 0;
    Family blocker;
    std::int64_t iterations = 0;  ///< hitting-set rounds (full) or search nodes (shifted)
    std::int64_t constraints = 0;  ///< s-matchings collected (full mode)
    Family family;                ///< universe minus blocker
};

/// max_layer <= 0 means no layer limit; Truncated defaults it to 3.
/// Limits: full n <= 6, shifted n <= 9, truncated n <= 10.
[[nodiscard]] OracleResult e_exact(int n, int s, OracleMode mode, int max_layer = 0);

/// Every optimal shifted up-set of the universe (the blocker-minimal ones).
[[nodiscard]] std::vector<Family> shifted_optima(int n, int s, int max_layer = 0);

/// Largest k-uniform family over [n] without an s-matching; k <= 3, n <= 12, n >= sk.
[[nodiscard]] OracleResult ek_exact(int n, int k, int s);

/// Adding back any single blocker set creates an s-matching.
[[nodiscard]] bool blocker_is_minimal(const OracleResult& r);

struct TheoremCheck {
    bool ok = false;
    std::int64_t value = 0;     ///< from the search
    std::int64_t formula = 0;   ///< from the closed forms
    std::int64_t optima = 0;    ///< optimal shifted up-sets found
    bool uniqueness_checked = false;  ///< only claimed for s >= 3
    bool unique_ok = true;            ///< each optimum equals a winning generator
    std::vector<std::string> matched;  ///< generator names matched by the optima
    std::string detail;
};

/// Search value equals 2^n - N; for s >= 3 every optimal shifted up-set is one
/// of the winning generators. n <= 9.
[[nodiscard]] TheoremCheck verify_main_theorem(int s, int c);

/// Layers <= 3: search value equals sum_{i<=3} C(n,i) - K. n <= 10.
[[nodiscard]] TheoremCheck verify_truncated(int s, int c);

/// Both sides of the empty-set reconciliation: the closed forms count the empty
/// set as missing, the search universe leaves it out.
[[nodiscard]] std::int64_t formula_family_size(std::int64_t universe_with_empty, std::int64_t missing_with_empty);

}  // namespace matchfree

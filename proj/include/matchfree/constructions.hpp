#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "matchfree/rational.hpp"
#include "matchfree/setfam.hpp"

namespace matchfree {

/// The four candidate extremal families of the regime 2s < n < 3s.
enum class FamilyKind { P, Pprime, Q, W };

inline constexpr FamilyKind kAllKinds[] = {FamilyKind::P, FamilyKind::Pprime, FamilyKind::Q, FamilyKind::W};

[[nodiscard]] std::string_view kind_name(FamilyKind kind);
/// Accepts "P", "Pprime" (or "P'"), "Q", "W".
[[nodiscard]] FamilyKind parse_kind(std::string_view name);

/// A family whose membership depends only on how many elements a set takes
/// from each of a few consecutive intervals [1, a_1], [a_1 + 1, a_1 + a_2], ...
/// This lets the four families be counted per layer at any n <= 62 without
/// materializing 2^n sets.
struct ProfileFamily {
    int n = 0;
    std::vector<int> lengths;
    std::function<bool(std::span<const int>)> member;

    [[nodiscard]] std::vector<SetMask> interval_masks() const;
    [[nodiscard]] bool contains(SetMask m) const;
    /// Missing sets per layer, computed from the profile counts.
    [[nodiscard]] std::vector<std::uint64_t> missing_per_layer() const;
    /// Missing sets per layer by scanning every subset; n <= 30.
    [[nodiscard]] std::vector<std::uint64_t> missing_per_layer_by_scan() const;
    /// All members; n <= 26.
    [[nodiscard]] Family materialize() const;
};

[[nodiscard]] ProfileFamily profile_of(FamilyKind kind, const Params& p);

[[nodiscard]] Family family_of(FamilyKind kind, const Params& p);
[[nodiscard]] Family family_P(int s, int c);
[[nodiscard]] Family family_Pprime(int s, int c);
[[nodiscard]] Family family_Q(int s, int c);
[[nodiscard]] Family family_W(int s, int c);

/// {P : |P| + |P cap [l-1]| >= m + 1} over n = sm + s - l.
[[nodiscard]] ProfileFamily profile_P_general(int s, int m, int l);
[[nodiscard]] Family family_P_general(int s, int m, int l);

/// k-sets F of [n] with |F cap [si - 1]| >= i. Matching number at most s - 1.
[[nodiscard]] Family family_A(int n, int k, int i, int s);

/// Largest family without s pairwise disjoint sets for n = sm - 1 (all sets of
/// size >= m) or n = sm (the doubling of the n = sm - 1 family).
[[nodiscard]] Family family_kleitman(int n, int s);

/// Nonnegative element weights, one per element of [n].
struct FractionalCover {
    std::vector<Rational> weights;

    [[nodiscard]] Rational total() const;
    [[nodiscard]] Rational weight_of(SetMask m) const;
};

[[nodiscard]] FractionalCover certificate_for(FamilyKind kind, const Params& p);

/// Sum of weights < s and every member has weight >= 1. True implies nu(f) < s.
[[nodiscard]] bool verify_cover(const Family& f, const FractionalCover& x, int s);
/// Same check over a profile family: for each profile the lightest member
/// takes the cheapest elements of every interval.
[[nodiscard]] bool verify_cover(const ProfileFamily& f, const FractionalCover& x, int s);

}  // namespace matchfree

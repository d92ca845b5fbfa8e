#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace matchfree {

/// A subset of [n] = {1, ..., n}: bit k-1 is set iff element k is present.
using SetMask = std::uint64_t;

inline constexpr int kMaxGround = 62;

[[nodiscard]] constexpr int set_size(SetMask m) { return std::popcount(m); }
[[nodiscard]] constexpr SetMask element_bit(int k) { return SetMask{1} << (k - 1); }
[[nodiscard]] constexpr bool has_element(SetMask m, int k) { return (m >> (k - 1)) & 1U; }
/// Mask of the interval [a, b] (1-based, inclusive); empty when a > b.
[[nodiscard]] constexpr SetMask interval_mask(int a, int b) {
    if (a < 1) a = 1;
    if (b < a) return 0;
    const SetMask upto_b = b >= 64 ? ~SetMask{0} : (SetMask{1} << b) - 1;
    return upto_b & ~((SetMask{1} << (a - 1)) - 1);
}
[[nodiscard]] constexpr SetMask ground_mask(int n) { return interval_mask(1, n); }

[[nodiscard]] SetMask make_set(std::initializer_list<int> elements);
[[nodiscard]] SetMask make_set(std::span<const int> elements);
/// Elements of the set in increasing order, 1-based.
[[nodiscard]] std::vector<int> elements_of(SetMask m);

/// Exact binomial coefficient; zero outside 0 <= k <= n. Throws on overflow.
[[nodiscard]] std::uint64_t binom(std::int64_t n, std::int64_t k);

/// The parameter tuple of the regime 2s < n < 3s, written n = 2s + c = 3s - l.
struct Params {
    int s = 0;
    int c = 0;
    int l = 0;
    int n = 0;

    friend bool operator==(const Params&, const Params&) = default;
};

/// Validates 2 <= s, 1 <= c <= s - 1 and 2s + c <= 62.
[[nodiscard]] Params make_params(int s, int c);
/// Same ranges without the 62-element cap; for closed-form evaluation only.
[[nodiscard]] Params formula_params(int s, int c);

/// Canonical family over [n]: strictly increasing list of member masks.
class Family {
public:
    Family() = default;
    explicit Family(int n);
    /// Sorts, removes duplicates and validates every member against n.
    Family(int n, std::vector<SetMask> members);
    Family(int n, std::initializer_list<std::initializer_list<int>> sets);

    /// Caller guarantees strictly increasing members that fit in [n].
    [[nodiscard]] static Family from_canonical(int n, std::vector<SetMask> members);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] std::span<const SetMask> members() const { return members_; }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }
    [[nodiscard]] bool contains(SetMask m) const;

    friend bool operator==(const Family&, const Family&) = default;

private:
    int n_ = 0;
    std::vector<SetMask> members_;
};

/// Membership test tuned for repeated lookups: a dense bitmap for small
/// ground sets, binary search otherwise.
class MembershipIndex {
public:
    explicit MembershipIndex(const Family& f);
    [[nodiscard]] bool contains(SetMask m) const;

private:
    const Family* family_;
    std::vector<std::uint64_t> bitmap_;
};

// ---------------------------------------------------------------------------
// Matchings

using MatchingWitness = std::vector<SetMask>;

struct NuResult {
    int size = 0;
    MatchingWitness witness;
};

struct MatchingOptions {
    /// When false, a family containing the empty set is rejected with
    /// std::invalid_argument. When true, the empty set counts as one
    /// distinct member disjoint from everything.
    bool allow_empty = false;
};

/// Exact matching number with a witness matching of that size.
[[nodiscard]] NuResult nu(const Family& f, MatchingOptions opts = {});

/// Some s pairwise disjoint distinct members, if they exist.
[[nodiscard]] std::optional<MatchingWitness> has_s_matching(const Family& f, int s, MatchingOptions opts = {});

/// Inclusion-minimal members. The matching number of a family equals that of
/// its minimal members.
[[nodiscard]] Family minimal_members(const Family& f);

/// True iff the sets are distinct, pairwise disjoint, and all belong to f.
[[nodiscard]] bool is_matching_in(const Family& f, std::span<const SetMask> sets);

// ---------------------------------------------------------------------------
// Shifting and closures

/// S_{i<-j}(A): replaces j by i when j is in A and i is not.
[[nodiscard]] constexpr SetMask shift_set(SetMask a, int i, int j) {
    if (has_element(a, j) && !has_element(a, i)) {
        return (a & ~element_bit(j)) | element_bit(i);
    }
    return a;
}

[[nodiscard]] Family shift_once(const Family& f, int i, int j);
[[nodiscard]] Family shift_closure(const Family& f);
[[nodiscard]] bool is_shifted(const Family& f);
[[nodiscard]] bool is_upset(const Family& f);
[[nodiscard]] Family upset_closure(const Family& f);

/// y(i) = C(n, i) - |F^(i)| for i = 0..n.
[[nodiscard]] std::vector<std::uint64_t> y_profile(const Family& f);

/// Number of 2-sets {a < b} with a >= i and b >= j, i.e. those that shift to {i, j}.
[[nodiscard]] std::uint64_t shiftable_pair_count(int n, int i, int j);

/// True iff a can be carried onto b by a sequence of (i<-j) shifts: equal
/// sizes and the sorted elements of a dominate those of b coordinatewise.
[[nodiscard]] bool can_shift_to(SetMask a, SetMask b);

/// {F subset of [n+1] : F cap [n] in f}. Rejects families containing the empty set.
[[nodiscard]] Family doubling(const Family& f);

}  // namespace matchfree

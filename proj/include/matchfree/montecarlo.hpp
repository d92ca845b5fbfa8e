#pragma once

#include <cstdint>
#include <vector>

#include "matchfree/rational.hpp"

namespace matchfree {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct McEstimate {
    std::int64_t trials = 0;
    std::int64_t hits = 0;
    Rational estimate;  ///< hits / trials
    Rational target;
    double z_score = 0.0;  ///< (estimate - target) / sigma under the target
};

struct McResult {
    McEstimate triple;      ///< probe triple {x, y1, y2} lands in the random matching
    McEstimate x_in_z;      ///< probe element x is left uncovered by the chosen pairs
    std::vector<std::int64_t> z_counts;  ///< even case: how often each element of X was drawn as z
    int probe_x = 0;
    int y1 = 0;
    int y2 = 0;
};

/// Random s-matching built from a fixed packing of triples, l random pairs of
/// the matching {i, 2l+2k+1-i} (k = (d-1)/2), and a random assignment of the
/// uncovered prefix elements to pairs of the leftover tail. d odd, 1 <= d <= c+1.
/// The probe is {probe_x, y1, y2} with y1 < y2 the two smallest leftover tail
/// elements; probe_x = 0 picks 1.
[[nodiscard]] McResult mc_odd(int l, int c, int d, std::int64_t trials, std::uint64_t seed = kDefaultSeed,
                              int probe_x = 0);

/// Same with an extra uniform draw of z from X (the top xsize elements of
/// [2l+d-1]) and the pairing avoiding z. d even, 2 <= d <= c+1.
/// probe_x = 0 picks the largest element of X.
[[nodiscard]] McResult mc_even(int l, int c, int d, int xsize, std::int64_t trials,
                               std::uint64_t seed = kDefaultSeed, int probe_x = 0);

/// Worker count: MATCHFREE_THREADS if set and positive, else hardware concurrency.
[[nodiscard]] unsigned worker_count();

}  // namespace matchfree

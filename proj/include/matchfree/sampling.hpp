#pragma once

#include <random>

#include "matchfree/setfam.hpp"

namespace matchfree {

/// Random shifted, singleton-free up-set over [n] without an s-matching:
/// grows from the empty family by random sets of size >= 2, keeping a step
/// only while no s-matching appears. n <= 16.
[[nodiscard]] Family random_shifted_upset(std::mt19937_64& rng, int n, int s);

}  // namespace matchfree

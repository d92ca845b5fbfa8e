#include "matchfree/sampling.hpp"

#include <stdexcept>

namespace matchfree {

Family random_shifted_upset(std::mt19937_64& rng, int n, int s) {
    if (n < 2 || n > 16 || s < 1) {
        throw std::invalid_argument("random_shifted_upset needs 2 <= n <= 16 and s >= 1");
    }
    Family f(n);
    const SetMask top = (SetMask{1} << n) - 1;
    const int tries = 1 + static_cast<int>(rng() % 40);
    for (int t = 0; t < tries; ++t) {
        const SetMask a = 1 + rng() % top;
        if (set_size(a) < 2) continue;
        std::vector<SetMask> next(f.begin(), f.end());
        next.push_back(a);
        Family g = shift_closure(upset_closure(Family(n, std::move(next))));
        if (!has_s_matching(g, s).has_value()) f = std::move(g);
    }
    return f;
}

}  // namespace matchfree

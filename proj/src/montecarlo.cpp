#include "matchfree/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "matchfree/setfam.hpp"

namespace matchfree {

namespace {

constexpr std::int64_t kChunk = std::int64_t{1} << 16;

using Pair = std::pair<int, int>;

// Unbiased draw from [0, bound) by rejection of the short tail.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[draw_below(rng, i)]);
    }
}

// Moves `count` uniformly chosen entries of v to its front.
template <typename T>
void choose_front(std::vector<T>& v, std::size_t count, std::mt19937_64& rng) {
    for (std::size_t i = 0; i < count; ++i) {
        std::swap(v[i], v[i + draw_below(rng, v.size() - i)]);
    }
}

struct Layout {
    int prefix = 0;        // |[2l+d-1]|
    std::vector<int> y;    // leftover tail elements, increasing
};

Layout make_layout(int l, int c, int d) {
    Layout lay;
    lay.prefix = 2 * l + d - 1;
    const int n = 2 * (l + c) + c;
    const int first_free = 2 * l + d + 3 * (c - d + 1);
    for (int e = first_free; e <= n; ++e) lay.y.push_back(e);
    return lay;
}

struct Counts {
    std::int64_t hits = 0;
    std::int64_t in_z = 0;
    std::vector<std::int64_t> z_counts;
};

McEstimate finish(std::int64_t trials, std::int64_t hits, Rational target) {
    McEstimate e;
    e.trials = trials;
    e.hits = hits;
    e.estimate = Rational(hits, trials);
    e.target = target;
    const double p = target.to_double();
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    const double diff = e.estimate.to_double() - p;
    if (sigma > 0) {
        e.z_score = diff / sigma;
    } else {
        e.z_score = diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return e;
}

// Splits trials into fixed chunks, each with its own generator seeded from
// (seed, chunk index), so totals do not depend on the worker count.
template <typename TrialFn>
Counts run_chunks(std::int64_t trials, std::uint64_t seed, std::size_t z_slots, TrialFn trial) {
    const std::int64_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<Counts> per_chunk(static_cast<std::size_t>(chunks));
    std::atomic<std::int64_t> next{0};
    const auto worker = [&] {
        while (true) {
            const std::int64_t idx = next.fetch_add(1);
            if (idx >= chunks) return;
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
            std::mt19937_64 rng(seq);
            Counts& out = per_chunk[static_cast<std::size_t>(idx)];
            out.z_counts.assign(z_slots, 0);
            const std::int64_t count = std::min(kChunk, trials - idx * kChunk);
            for (std::int64_t t = 0; t < count; ++t) trial(rng, out);
        }
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(worker_count(), static_cast<unsigned>(chunks)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    Counts total;
    total.z_counts.assign(z_slots, 0);
    for (const Counts& c : per_chunk) {
        total.hits += c.hits;
        total.in_z += c.in_z;
        for (std::size_t i = 0; i < z_slots; ++i) total.z_counts[i] += c.z_counts[i];
    }
    return total;
}

// Draws l of the pairs, leaves the rest (plus `extra` if nonzero) as Z, and
// matches each element of Z with a random pair of Y. Records whether the
// probe triple occurs.
void complete_trial(std::vector<Pair> pairs, int l, int extra, const std::vector<int>& y_base, int x, int y1, int y2,
                    std::mt19937_64& rng, Counts& out) {
    // The last pairs.size() - l entries after choose_front are the dropped ones.
    const std::size_t dropped = pairs.size() - static_cast<std::size_t>(l);
    choose_front(pairs, dropped, rng);
    std::vector<int> z;
    z.reserve(2 * dropped + 1);
    if (extra != 0) z.push_back(extra);
    for (std::size_t i = 0; i < dropped; ++i) {
        z.push_back(pairs[i].first);
        z.push_back(pairs[i].second);
    }
    const auto pos = std::find(z.begin(), z.end(), x);
    if (pos == z.end()) return;
    ++out.in_z;
    std::vector<int> y = y_base;
    shuffle(y, rng);
    const auto t = static_cast<std::size_t>(pos - z.begin());
    const int a = y[2 * t];
    const int b = y[2 * t + 1];
    if ((a == y1 && b == y2) || (a == y2 && b == y1)) ++out.hits;
}

void check_trials(std::int64_t trials) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
}

}  // namespace

unsigned worker_count() {
    if (const char* env = std::getenv("MATCHFREE_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

McResult mc_odd(int l, int c, int d, std::int64_t trials, std::uint64_t seed, int probe_x) {
    if (d % 2 != 1) throw std::invalid_argument("mc_odd needs odd d");
    if (l < 1 || c < 1 || d < 1 || d > c + 1) throw std::invalid_argument("mc_odd needs l, c >= 1 and 1 <= d <= c+1");
    check_trials(trials);
    const int k = (d - 1) / 2;
    const Layout lay = make_layout(l, c, d);
    McResult r;
    r.probe_x = probe_x == 0 ? 1 : probe_x;
    if (r.probe_x < 1 || r.probe_x > lay.prefix) throw std::invalid_argument("probe must lie in [2l+d-1]");

    std::vector<Pair> pairs;
    for (int i = 1; i <= l + k; ++i) pairs.emplace_back(i, 2 * l + 2 * k + 1 - i);

    Rational triple_target(0);
    if (lay.y.size() >= 2) {
        r.y1 = lay.y[0];
        r.y2 = lay.y[1];
        triple_target = Rational(k, l + k) / Rational(static_cast<std::int64_t>(binom(2 * d - 2, 2)));
    }
    const Counts counts = run_chunks(trials, seed, 0, [&](std::mt19937_64& rng, Counts& out) {
        complete_trial(pairs, l, 0, lay.y, r.probe_x, r.y1, r.y2, rng, out);
    });
    r.triple = finish(trials, counts.hits, triple_target);
    r.x_in_z = finish(trials, counts.in_z, Rational(k, l + k));
    return r;
}

McResult mc_even(int l, int c, int d, int xsize, std::int64_t trials, std::uint64_t seed, int probe_x) {
    if (d % 2 != 0) throw std::invalid_argument("mc_even needs even d");
    if (l < 1 || c < 1 || d < 2 || d > c + 1) throw std::invalid_argument("mc_even needs l, c >= 1 and 2 <= d <= c+1");
    check_trials(trials);
    const int k = (d - 2) / 2;
    const Layout lay = make_layout(l, c, d);
    const int m = lay.prefix;
    if (xsize < 1 || xsize > m) throw std::invalid_argument("xsize must lie in [1, 2l+d-1]");
    const int x_lo = m - xsize + 1;
    McResult r;
    r.probe_x = probe_x == 0 ? m : probe_x;
    if (r.probe_x < x_lo || r.probe_x > m) throw std::invalid_argument("probe must lie in X");

    // Matching of [m] minus {2}: {1, m}, {3, m-1}, {4, m-2}, ...
    std::vector<Pair> base{{1, m}};
    for (int i = 3; i <= l + d / 2; ++i) base.emplace_back(i, m + 2 - i);
    // Per z: for z = 1 the outside-in matching of [2, m]; otherwise swap 2 in for z.
    std::vector<std::vector<Pair>> avoiding(static_cast<std::size_t>(m) + 1);
    for (int z = 1; z <= m; ++z) {
        std::vector<Pair> pz;
        if (z == 1) {
            for (int i = 2; i <= 1 + (m - 1) / 2; ++i) pz.emplace_back(i, m + 2 - i);
        } else {
            pz = base;
            if (z != 2) {
                for (Pair& pr : pz) {
                    if (pr.first == z) pr.first = 2;
                    else if (pr.second == z) pr.second = 2;
                }
            }
        }
        avoiding[static_cast<std::size_t>(z)] = std::move(pz);
    }

    Rational triple_target(0);
    const Rational x_target(static_cast<std::int64_t>(k) * xsize + l, static_cast<std::int64_t>(l + k) * xsize);
    if (lay.y.size() >= 2) {
        r.y1 = lay.y[0];
        r.y2 = lay.y[1];
        triple_target = x_target / Rational(static_cast<std::int64_t>(binom(2 * d - 2, 2)));
    }
    const Counts counts = run_chunks(trials, seed, static_cast<std::size_t>(xsize), [&](std::mt19937_64& rng, Counts& out) {
        const int zi = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(xsize)));
        ++out.z_counts[static_cast<std::size_t>(zi)];
        const int z = x_lo + zi;
        complete_trial(avoiding[static_cast<std::size_t>(z)], l, z, lay.y, r.probe_x, r.y1, r.y2, rng, out);
    });
    r.triple = finish(trials, counts.hits, triple_target);
    r.x_in_z = finish(trials, counts.in_z, x_target);
    r.z_counts = counts.z_counts;
    return r;
}

}  // namespace matchfree

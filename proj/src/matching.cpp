#include <algorithm>
#include <unordered_map>

#include "matchfree/setfam.hpp"

namespace matchfree {

namespace {

constexpr int kDenseMinimalLimit = 22;
constexpr int kDenseMemoLimit = 24;

std::vector<SetMask> minimal_dense(const Family& f) {
    const std::size_t size = std::size_t{1} << f.n();
    // below[m]: some member is a proper subset of m.
    std::vector<std::uint8_t> member(size, 0);
    std::vector<std::uint8_t> below(size, 0);
    for (SetMask m : f) member[m] = 1;
    for (std::size_t m = 1; m < size; ++m) {
        for (std::size_t rest = m; rest != 0; rest &= rest - 1) {
            const std::size_t sub = m & ~(rest & -rest);
            if (member[sub] || below[sub]) {
                below[m] = 1;
                break;
            }
        }
    }
    std::vector<SetMask> out;
    for (SetMask m : f) {
        if (!below[m]) out.push_back(m);
    }
    return out;
}

std::vector<SetMask> minimal_pairwise(const Family& f) {
    std::vector<SetMask> by_size(f.begin(), f.end());
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](SetMask a, SetMask b) { return set_size(a) < set_size(b); });
    std::vector<SetMask> kept;
    for (SetMask m : by_size) {
        const bool dominated = std::any_of(kept.begin(), kept.end(), [m](SetMask k) { return (k & m) == k; });
        if (!dominated) kept.push_back(m);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

// Maximum packing of an antichain of nonempty sets. capped(avail, cap) returns
// min(cap, best packing inside avail); the memo records either an exact value
// or a lower bound reached when the search stopped at its cap.
class PackingSearch {
public:
    PackingSearch(int n, std::span<const SetMask> sets) : by_min_(static_cast<std::size_t>(n) + 1) {
        min_size_ = n + 1;
        for (SetMask m : sets) {
            by_min_[std::countr_zero(m) + 1].push_back(m);
            universe_ |= m;
            min_size_ = std::min(min_size_, set_size(m));
        }
        for (auto& bucket : by_min_) {
            std::stable_sort(bucket.begin(), bucket.end(),
                             [](SetMask a, SetMask b) { return set_size(a) < set_size(b); });
        }
        if (n <= kDenseMemoLimit) dense_.assign(std::size_t{1} << n, 0);
    }

    [[nodiscard]] SetMask universe() const { return universe_; }

    int capped(SetMask avail, int cap) {
        if (cap <= 0 || avail == 0) return 0;
        const int trivial = set_size(avail) / min_size_;
        if (trivial == 0) return 0;
        cap = std::min(cap, trivial);

        const std::uint8_t code = lookup(avail);
        if (code != 0) {
            const int v = (code - 1) >> 1;
            const bool exact = (code - 1) & 1;
            if (exact || v >= cap) return std::min(v, cap);
        }

        const int e = std::countr_zero(avail) + 1;
        const SetMask rest = avail & ~element_bit(e);
        int best = capped(rest, cap);
        for (SetMask s : by_min_[e]) {
            if (best >= cap) break;
            if ((s & avail) != s) continue;
            best = std::max(best, 1 + capped(avail & ~s, cap - 1));
        }
        store(avail, best, best < cap);
        return best;
    }

    MatchingWitness witness(SetMask avail, int need) {
        MatchingWitness out;
        while (need > 0) {
            const int e = std::countr_zero(avail) + 1;
            bool took = false;
            for (SetMask s : by_min_[e]) {
                if ((s & avail) != s) continue;
                if (capped(avail & ~s, need - 1) >= need - 1) {
                    out.push_back(s);
                    avail &= ~s;
                    --need;
                    took = true;
                    break;
                }
            }
            if (!took) avail &= ~element_bit(e);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::uint8_t lookup(SetMask avail) const {
        if (!dense_.empty()) return dense_[avail];
        const auto it = sparse_.find(avail);
        return it == sparse_.end() ? 0 : it->second;
    }

    void store(SetMask avail, int v, bool exact) {
        const auto code = static_cast<std::uint8_t>(((v << 1) | (exact ? 1 : 0)) + 1);
        if (!dense_.empty()) {
            dense_[avail] = code;
        } else {
            sparse_[avail] = code;
        }
    }

    int min_size_ = 1;
    SetMask universe_ = 0;
    std::vector<std::vector<SetMask>> by_min_;
    std::vector<std::uint8_t> dense_;
    std::unordered_map<SetMask, std::uint8_t> sparse_;
};

// Nonempty minimal members plus whether the empty set is present.
std::pair<std::vector<SetMask>, bool> prepare(const Family& f, const MatchingOptions& opts) {
    const bool has_empty = f.contains(0);
    if (has_empty && !opts.allow_empty) {
        throw std::invalid_argument("matching operations reject the empty set unless allow_empty is set");
    }
    std::vector<SetMask> rest;
    rest.reserve(f.size());
    for (SetMask m : f) {
        if (m != 0) rest.push_back(m);
    }
    const Family minimal = minimal_members(Family::from_canonical(f.n(), std::move(rest)));
    return {std::vector<SetMask>(minimal.begin(), minimal.end()), has_empty};
}

}  // namespace

Family minimal_members(const Family& f) {
    if (f.empty()) return f;
    if (f.n() <= kDenseMinimalLimit) return Family::from_canonical(f.n(), minimal_dense(f));
    return Family::from_canonical(f.n(), minimal_pairwise(f));
}

NuResult nu(const Family& f, MatchingOptions opts) {
    auto [sets, has_empty] = prepare(f, opts);
    NuResult r;
    if (!sets.empty()) {
        PackingSearch search(f.n(), sets);
        const SetMask all = search.universe();
        r.size = search.capped(all, set_size(all));
        r.witness = search.witness(all, r.size);
    }
    if (has_empty) {
        r.witness.insert(r.witness.begin(), SetMask{0});
        ++r.size;
    }
    return r;
}

std::optional<MatchingWitness> has_s_matching(const Family& f, int s, MatchingOptions opts) {
    if (s < 1) {
        throw std::invalid_argument("has_s_matching requires s >= 1");
    }
    auto [sets, has_empty] = prepare(f, opts);
    const int need = has_empty ? s - 1 : s;
    MatchingWitness w;
    if (need > 0) {
        if (sets.empty()) return std::nullopt;
        PackingSearch search(f.n(), sets);
        const SetMask all = search.universe();
        if (search.capped(all, need) < need) return std::nullopt;
        w = search.witness(all, need);
    }
    if (has_empty) w.insert(w.begin(), SetMask{0});
    return w;
}

bool is_matching_in(const Family& f, std::span<const SetMask> sets) {
    SetMask used = 0;
    for (std::size_t a = 0; a < sets.size(); ++a) {
        if (!f.contains(sets[a])) return false;
        if (sets[a] & used) return false;
        for (std::size_t b = 0; b < a; ++b) {
            if (sets[a] == sets[b]) return false;
        }
        used |= sets[a];
    }
    return true;
}

}  // namespace matchfree

#include "matchfree/oracle.hpp"

#include <algorithm>
#include <bitset>
#include <stdexcept>

#include "matchfree/formulas.hpp"

namespace matchfree {

namespace {

constexpr std::size_t kMaxUniverse = 512;
using Bits = std::bitset<kMaxUniverse>;

// Nonempty sets of [n] with size in [lo, hi], ascending by mask.
std::vector<SetMask> layer_universe(int n, int lo, int hi) {
    std::vector<SetMask> out;
    for (SetMask m = 1; m < (SetMask{1} << n); ++m) {
        const int k = set_size(m);
        if (k >= lo && k <= hi) out.push_back(m);
    }
    return out;
}

// a is dominated by b: b contains a left-shift of a.
bool dominated(SetMask a, SetMask b) {
    const int ka = set_size(a);
    if (set_size(b) < ka) return false;
    SetMask head = 0;
    SetMask rest = b;
    for (int i = 0; i < ka; ++i) {
        const SetMask low = rest & (0 - rest);
        head |= low;
        rest ^= low;
    }
    return can_shift_to(a, head);
}

Family family_from(int n, const std::vector<SetMask>& sets, const Bits& keep) {
    std::vector<SetMask> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (keep[i]) out.push_back(sets[i]);
    }
    return Family::from_canonical(n, std::move(out));
}

// Branch and bound over blockers that are down-sets of the domination order.
// Each s-matching in the kept family needs one of its sets in the blocker;
// branch k puts set k in (with everything below it) and sets 1..k-1 out
// (with everything above them), so branches partition the search space.
class ShiftedSearch {
public:
    ShiftedSearch(int n, int s, std::vector<SetMask> sets, bool all_optima)
        : n_(n), s_(s), sets_(std::move(sets)), all_(all_optima) {
        if (sets_.size() > kMaxUniverse) throw std::invalid_argument("search universe too large");
        const std::size_t u = sets_.size();
        down_.assign(u, Bits{});
        up_.assign(u, Bits{});
        for (std::size_t i = 0; i < u; ++i) {
            for (std::size_t j = 0; j < u; ++j) {
                if (dominated(sets_[j], sets_[i])) {
                    down_[i].set(j);
                    up_[j].set(i);
                }
            }
        }
        index_.assign(std::size_t{1} << n_, -1);
        for (std::size_t i = 0; i < u; ++i) index_[sets_[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < u; ++i) everything_.set(i);
        best_ = static_cast<std::int64_t>(u);
        best_blocker_ = everything_;
    }

    void run() {
        if (all_) optima_.clear();
        search(Bits{}, Bits{});
        if (all_ && optima_.empty()) optima_.push_back(best_blocker_);
    }

    [[nodiscard]] std::int64_t best() const { return best_; }
    [[nodiscard]] const Bits& best_blocker() const { return best_blocker_; }
    [[nodiscard]] const std::vector<Bits>& optima() const { return optima_; }
    [[nodiscard]] std::int64_t nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<SetMask>& sets() const { return sets_; }

private:
    bool beaten(std::int64_t lb) const { return all_ ? lb > best_ : lb >= best_; }

    void record(const Bits& blocker) {
        const auto size = static_cast<std::int64_t>(blocker.count());
        if (size < best_) {
            best_ = size;
            best_blocker_ = blocker;
            optima_.clear();
        }
        if (all_ && size == best_) optima_.push_back(blocker);
    }

    void search(const Bits& blocker, Bits forced_in) {
        ++nodes_;
        const auto size = static_cast<std::int64_t>(blocker.count());
        if (beaten(size)) return;
        const auto m = has_s_matching(family_from(n_, sets_, everything_ & ~blocker), s_);
        if (!m) {
            record(blocker);
            return;
        }
        struct Option {
            int idx;
            std::int64_t cost;
        };
        std::vector<Option> options;
        for (SetMask a : *m) {
            const int idx = index_[a];
            if (forced_in[static_cast<std::size_t>(idx)]) continue;
            const Bits grow = down_[static_cast<std::size_t>(idx)] & ~blocker;
            if ((grow & forced_in).any()) continue;
            options.push_back({idx, static_cast<std::int64_t>(grow.count())});
        }
        if (options.empty()) return;
        std::stable_sort(options.begin(), options.end(),
                         [](const Option& x, const Option& y) { return x.cost < y.cost; });
        if (beaten(size + options.front().cost)) return;
        for (const Option& o : options) {
            const auto i = static_cast<std::size_t>(o.idx);
            if ((down_[i] & forced_in).none() && !beaten(size + o.cost)) {
                search(blocker | down_[i], forced_in);
            }
            forced_in |= up_[i];
        }
    }

    int n_;
    int s_;
    std::vector<SetMask> sets_;
    bool all_;
    std::vector<Bits> down_;
    std::vector<Bits> up_;
    std::vector<int> index_;
    Bits everything_;
    std::int64_t best_ = 0;
    Bits best_blocker_;
    std::vector<Bits> optima_;
    std::int64_t nodes_ = 0;
};

// Exact minimum hitting set over at most 64 elements.
class HittingSet {
public:
    explicit HittingSet(const std::vector<std::uint64_t>& constraints, int elements)
        : constraints_(constraints), elements_(elements) {}

    std::uint64_t solve() {
        best_size_ = elements_ + 1;
        best_ = 0;
        branch(0, 0, 0);
        return best_;
    }

private:
    void branch(std::uint64_t chosen, std::uint64_t excluded, int size) {
        std::vector<std::uint64_t> open;
        for (std::uint64_t c : constraints_) {
            if ((c & chosen) == 0) {
                const std::uint64_t opts = c & ~excluded;
                if (opts == 0) return;
                open.push_back(opts);
            }
        }
        if (open.empty()) {
            if (size < best_size_) {
                best_size_ = size;
                best_ = chosen;
            }
            return;
        }
        std::stable_sort(open.begin(), open.end(),
                         [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
        // Pairwise disjoint open constraints each need their own element.
        std::uint64_t used = 0;
        int lb = 0;
        for (std::uint64_t o : open) {
            if ((o & used) == 0) {
                used |= o;
                ++lb;
            }
        }
        if (size + lb >= best_size_) return;
        std::uint64_t opts = open.front();
        while (opts != 0) {
            const std::uint64_t e = opts & (0 - opts);
            opts ^= e;
            branch(chosen | e, excluded, size + 1);
            excluded |= e;
        }
    }

    const std::vector<std::uint64_t>& constraints_;
    int elements_;
    int best_size_ = 0;
    std::uint64_t best_ = 0;
};

int effective_layer(int n, int max_layer) { return max_layer <= 0 ? n : std::min(n, max_layer); }

void check_ns(int n, int s) {
    if (n < 1 || s < 1) throw std::invalid_argument("oracle needs n, s >= 1");
}

OracleResult finish(int n, int s, int layer, OracleMode mode, const std::vector<SetMask>& sets, const Bits& blocker) {
    OracleResult r;
    r.n = n;
    r.s = s;
    r.max_layer = layer;
    r.mode = mode;
    r.universe = static_cast<std::int64_t>(sets.size());
    Bits all;
    for (std::size_t i = 0; i < sets.size(); ++i) all.set(i);
    r.blocker = family_from(n, sets, blocker);
    r.family = family_from(n, sets, all & ~blocker);
    r.value = static_cast<std::int64_t>(r.family.size());
    return r;
}

OracleResult run_shifted(int n, int s, int lo, int hi, OracleMode mode) {
    ShiftedSearch search(n, s, layer_universe(n, lo, hi), false);
    search.run();
    OracleResult r = finish(n, s, hi, mode, search.sets(), search.best_blocker());
    r.iterations = search.nodes();
    return r;
}

OracleResult run_full(int n, int s, int layer) {
    const std::vector<SetMask> sets = layer_universe(n, 1, layer);
    std::vector<int> index(std::size_t{1} << n, -1);
    for (std::size_t i = 0; i < sets.size(); ++i) index[sets[i]] = static_cast<int>(i);
    std::vector<std::uint64_t> constraints;
    std::uint64_t blocker = 0;
    std::int64_t rounds = 0;
    while (true) {
        ++rounds;
        std::vector<SetMask> kept;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (!((blocker >> i) & 1U)) kept.push_back(sets[i]);
        }
        const auto m = has_s_matching(Family::from_canonical(n, std::move(kept)), s);
        if (!m) break;
        std::uint64_t c = 0;
        for (SetMask a : *m) c |= std::uint64_t{1} << index[a];
        constraints.push_back(c);
        blocker = HittingSet(constraints, static_cast<int>(sets.size())).solve();
    }
    Bits b;
    for (std::size_t i = 0; i < sets.size(); ++i) b[i] = (blocker >> i) & 1U;
    OracleResult r = finish(n, s, layer, OracleMode::FullIhs, sets, b);
    r.iterations = rounds;
    r.constraints = static_cast<std::int64_t>(constraints.size());
    return r;
}

std::int64_t layers_up_to(int n, int k) {
    std::int64_t t = 0;
    for (int i = 0; i <= k; ++i) t += static_cast<std::int64_t>(binom(n, i));
    return t;
}

TheoremCheck compare_optima(int n, int s, int layer, const Params& p, std::int64_t formula, bool truncate_generators) {
    TheoremCheck t;
    t.formula = formula;
    const std::vector<Family> optima = shifted_optima(n, s, layer);
    t.optima = static_cast<std::int64_t>(optima.size());
    t.value = optima.empty() ? 0 : static_cast<std::int64_t>(optima.front().size());
    t.uniqueness_checked = s >= 3 && !truncate_generators;
    std::vector<std::pair<FamilyKind, Family>> gens;
    for (FamilyKind k : regime_classify(p).winners) {
        Family g = family_of(k, p);
        if (truncate_generators) {
            std::vector<SetMask> low;
            for (SetMask m : g) {
                if (set_size(m) <= layer) low.push_back(m);
            }
            g = Family::from_canonical(n, std::move(low));
        }
        gens.emplace_back(k, std::move(g));
    }
    for (const Family& f : optima) {
        bool hit = false;
        for (const auto& [k, g] : gens) {
            if (f == g) {
                hit = true;
                const std::string name(kind_name(k));
                if (std::find(t.matched.begin(), t.matched.end(), name) == t.matched.end()) t.matched.push_back(name);
            }
        }
        if (!hit && t.uniqueness_checked) t.unique_ok = false;
    }
    t.ok = t.value == t.formula && (!t.uniqueness_checked || t.unique_ok);
    t.detail = "search " + std::to_string(t.value) + ", formula " + std::to_string(t.formula) + ", " +
               std::to_string(t.optima) + " optimal shifted families";
    if (!t.unique_ok) t.detail += "; an optimum is not a winning generator";
    return t;
}

}  // namespace

std::string_view mode_name(OracleMode mode) {
    switch (mode) {
        case OracleMode::FullIhs: return "full";
        case OracleMode::Shifted: return "shifted";
        case OracleMode::Truncated: return "truncated";
    }
    return "?";
}

OracleMode parse_mode(std::string_view name) {
    if (name == "full" || name == "full_ihs") return OracleMode::FullIhs;
    if (name == "shifted" || name == "shifted_upset") return OracleMode::Shifted;
    if (name == "truncated") return OracleMode::Truncated;
    throw std::invalid_argument("unknown oracle mode: " + std::string(name));
}

OracleResult e_exact(int n, int s, OracleMode mode, int max_layer) {
    check_ns(n, s);
    switch (mode) {
        case OracleMode::FullIhs:
            if (n > kFullIhsLimit) throw std::invalid_argument("full mode limited to n <= 6");
            return run_full(n, s, effective_layer(n, max_layer));
        case OracleMode::Shifted:
            if (n > kShiftedLimit) throw std::invalid_argument("shifted mode limited to n <= 9");
            return run_shifted(n, s, 1, effective_layer(n, max_layer), mode);
        case OracleMode::Truncated:
            if (n > kTruncatedLimit) throw std::invalid_argument("truncated mode limited to n <= 10");
            return run_shifted(n, s, 1, effective_layer(n, max_layer <= 0 ? 3 : max_layer), mode);
    }
    throw std::invalid_argument("unknown oracle mode");
}

std::vector<Family> shifted_optima(int n, int s, int max_layer) {
    check_ns(n, s);
    const int layer = effective_layer(n, max_layer);
    if (n > (layer <= 3 ? kTruncatedLimit : kShiftedLimit)) {
        throw std::invalid_argument("shifted search limited to n <= 9 (n <= 10 for layers <= 3)");
    }
    ShiftedSearch search(n, s, layer_universe(n, 1, layer), true);
    search.run();
    Bits all;
    for (std::size_t i = 0; i < search.sets().size(); ++i) all.set(i);
    std::vector<Family> out;
    for (const Bits& b : search.optima()) out.push_back(family_from(n, search.sets(), all & ~b));
    std::sort(out.begin(), out.end(), [](const Family& a, const Family& b) {
        return std::ranges::lexicographical_compare(a.members(), b.members());
    });
    return out;
}

OracleResult ek_exact(int n, int k, int s) {
    check_ns(n, s);
    if (k < 1 || k > 3 || n > kUniformLimit || n < s * k) {
        throw std::invalid_argument("ek_exact needs 1 <= k <= 3, sk <= n <= 12");
    }
    ShiftedSearch search(n, s, layer_universe(n, k, k), false);
    search.run();
    OracleResult r = finish(n, s, k, OracleMode::Shifted, search.sets(), search.best_blocker());
    r.iterations = search.nodes();
    return r;
}

bool blocker_is_minimal(const OracleResult& r) {
    for (SetMask b : r.blocker) {
        std::vector<SetMask> with(r.family.begin(), r.family.end());
        with.push_back(b);
        if (!has_s_matching(Family(r.n, std::move(with)), r.s)) return false;
    }
    return true;
}

std::int64_t formula_family_size(std::int64_t universe_with_empty, std::int64_t missing_with_empty) {
    // Both counts include the empty set, which is never a member: removing it
    // from each side leaves the difference unchanged.
    const std::int64_t universe = universe_with_empty - 1;
    const std::int64_t missing = missing_with_empty - 1;
    return universe - missing;
}

TheoremCheck verify_main_theorem(int s, int c) {
    const Params p = make_params(s, c);
    if (p.n > kShiftedLimit) throw std::invalid_argument("theorem check limited to n <= 9");
    const std::int64_t formula = formula_family_size(std::int64_t{1} << p.n, nkm_minima(p).N);
    return compare_optima(p.n, s, p.n, p, formula, false);
}

TheoremCheck verify_truncated(int s, int c) {
    const Params p = make_params(s, c);
    if (p.n > kTruncatedLimit) throw std::invalid_argument("truncated check limited to n <= 10");
    const std::int64_t formula = formula_family_size(layers_up_to(p.n, 3), nkm_minima(p).K);
    return compare_optima(p.n, s, 3, p, formula, true);
}

}  // namespace matchfree

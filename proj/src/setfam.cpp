#include "matchfree/setfam.hpp"

#include <algorithm>
#include <unordered_set>

namespace matchfree {

namespace {

constexpr int kDenseIndexLimit = 22;
constexpr int kDenseClosureLimit = 24;

void check_ground(int n) {
    if (n < 0 || n > kMaxGround) {
        throw std::invalid_argument("ground set size must lie in [0, 62], got " + std::to_string(n));
    }
}

}  // namespace

SetMask make_set(std::initializer_list<int> elements) {
    return make_set(std::span<const int>(elements.begin(), elements.size()));
}

SetMask make_set(std::span<const int> elements) {
    SetMask m = 0;
    for (int k : elements) {
        if (k < 1 || k > kMaxGround) {
            throw std::invalid_argument("set element out of range: " + std::to_string(k));
        }
        m |= element_bit(k);
    }
    return m;
}

std::vector<int> elements_of(SetMask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(set_size(m)));
    while (m != 0) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

std::uint64_t binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::int64_t t = 1; t <= k; ++t) {
        r = r * static_cast<unsigned __int128>(n - k + t) / static_cast<unsigned __int128>(t);
        if (r > UINT64_MAX) {
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(r);
}

Params make_params(int s, int c) {
    const Params p = formula_params(s, c);
    if (p.n > kMaxGround) {
        throw std::invalid_argument("n = 2s + c exceeds 62");
    }
    return p;
}

Params formula_params(int s, int c) {
    if (s < 2) {
        throw std::invalid_argument("s must be at least 2");
    }
    if (c < 1 || c > s - 1) {
        throw std::invalid_argument("c must lie in [1, s-1]");
    }
    return Params{s, c, s - c, 2 * s + c};
}

Family::Family(int n) : n_(n) { check_ground(n); }

Family::Family(int n, std::vector<SetMask> members) : n_(n), members_(std::move(members)) {
    check_ground(n);
    const SetMask outside = ~ground_mask(n);
    for (SetMask m : members_) {
        if (m & outside) {
            throw std::invalid_argument("family member has an element outside [n]");
        }
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Family::Family(int n, std::initializer_list<std::initializer_list<int>> sets) : n_(n) {
    check_ground(n);
    std::vector<SetMask> ms;
    ms.reserve(sets.size());
    for (const auto& s : sets) {
        ms.push_back(make_set(s));
    }
    *this = Family(n, std::move(ms));
}

Family Family::from_canonical(int n, std::vector<SetMask> members) {
    Family f;
    f.n_ = n;
    f.members_ = std::move(members);
    return f;
}

bool Family::contains(SetMask m) const {
    return std::binary_search(members_.begin(), members_.end(), m);
}

MembershipIndex::MembershipIndex(const Family& f) : family_(&f) {
    if (f.n() <= kDenseIndexLimit) {
        bitmap_.assign((std::size_t{1} << f.n()) / 64 + 1, 0);
        for (SetMask m : f) {
            bitmap_[m >> 6] |= std::uint64_t{1} << (m & 63);
        }
    }
}

bool MembershipIndex::contains(SetMask m) const {
    if (!bitmap_.empty()) {
        if ((m >> 6) >= bitmap_.size()) return false;
        return (bitmap_[m >> 6] >> (m & 63)) & 1U;
    }
    return family_->contains(m);
}

Family shift_once(const Family& f, int i, int j) {
    if (i < 1 || j > f.n() || i >= j) {
        throw std::invalid_argument("shift_once requires 1 <= i < j <= n");
    }
    const MembershipIndex idx(f);
    std::vector<SetMask> out;
    out.reserve(f.size());
    for (SetMask a : f) {
        const SetMask b = shift_set(a, i, j);
        out.push_back(b != a && !idx.contains(b) ? b : a);
    }
    std::sort(out.begin(), out.end());
    return Family::from_canonical(f.n(), std::move(out));
}

Family shift_closure(const Family& f) {
    Family cur = f;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i <= cur.n(); ++i) {
            for (int j = i + 1; j <= cur.n(); ++j) {
                Family next = shift_once(cur, i, j);
                if (next != cur) {
                    cur = std::move(next);
                    changed = true;
                }
            }
        }
    }
    return cur;
}

bool is_shifted(const Family& f) {
    const MembershipIndex idx(f);
    for (SetMask a : f) {
        for (int j = 2; j <= f.n(); ++j) {
            if (!has_element(a, j)) continue;
            for (int i = 1; i < j; ++i) {
                if (has_element(a, i)) continue;
                if (!idx.contains(shift_set(a, i, j))) return false;
            }
        }
    }
    return true;
}

bool is_upset(const Family& f) {
    const MembershipIndex idx(f);
    const SetMask full = ground_mask(f.n());
    for (SetMask a : f) {
        for (SetMask rest = full & ~a; rest != 0; rest &= rest - 1) {
            if (!idx.contains(a | (rest & -rest))) return false;
        }
    }
    return true;
}

Family upset_closure(const Family& f) {
    const int n = f.n();
    const SetMask full = ground_mask(n);
    std::vector<SetMask> out;
    if (n <= kDenseClosureLimit) {
        std::vector<bool> in(std::size_t{1} << n, false);
        for (SetMask m : f) in[m] = true;
        for (SetMask m = 0; m <= full; ++m) {
            if (!in[m]) continue;
            out.push_back(m);
            for (SetMask rest = full & ~m; rest != 0; rest &= rest - 1) {
                in[m | (rest & -rest)] = true;
            }
        }
        return Family::from_canonical(n, std::move(out));
    }
    std::unordered_set<SetMask> seen(f.begin(), f.end());
    std::vector<SetMask> stack(f.begin(), f.end());
    while (!stack.empty()) {
        const SetMask m = stack.back();
        stack.pop_back();
        for (SetMask rest = full & ~m; rest != 0; rest &= rest - 1) {
            const SetMask up = m | (rest & -rest);
            if (seen.insert(up).second) stack.push_back(up);
        }
    }
    out.assign(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return Family::from_canonical(n, std::move(out));
}

std::vector<std::uint64_t> y_profile(const Family& f) {
    std::vector<std::uint64_t> y(static_cast<std::size_t>(f.n()) + 1);
    for (int i = 0; i <= f.n(); ++i) y[i] = binom(f.n(), i);
    for (SetMask m : f) --y[set_size(m)];
    return y;
}

std::uint64_t shiftable_pair_count(int n, int i, int j) {
    if (i < 1 || j > n || i >= j) {
        throw std::invalid_argument("shiftable_pair_count requires 1 <= i < j <= n");
    }
    const auto nn = static_cast<std::uint64_t>(n);
    return (nn + j - 2 * static_cast<std::uint64_t>(i)) * (nn - j + 1) / 2;
}

bool can_shift_to(SetMask a, SetMask b) {
    if (set_size(a) != set_size(b)) return false;
    while (a != 0) {
        if (std::countr_zero(a) < std::countr_zero(b)) return false;
        a &= a - 1;
        b &= b - 1;
    }
    return true;
}

Family doubling(const Family& f) {
    if (f.n() + 1 > kMaxGround) {
        throw std::invalid_argument("doubling would exceed the 62-element ground set");
    }
    if (f.contains(0)) {
        throw std::invalid_argument("doubling is undefined for families containing the empty set");
    }
    const SetMask top = element_bit(f.n() + 1);
    std::vector<SetMask> out(f.begin(), f.end());
    out.reserve(2 * f.size());
    for (SetMask m : f) out.push_back(m | top);
    return Family::from_canonical(f.n() + 1, std::move(out));
}

}  // namespace matchfree

#include "matchfree/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace matchfree {

namespace {

constexpr int kMaterializeLimit = 26;
constexpr int kScanLimit = 30;

// Calls fn(counts) for every count vector 0 <= counts[j] <= lengths[j].
template <typename Fn>
void for_each_profile(std::span<const int> lengths, Fn&& fn) {
    std::vector<int> t(lengths.size(), 0);
    while (true) {
        fn(std::span<const int>(t));
        std::size_t j = 0;
        while (j < t.size() && t[j] == lengths[j]) {
            t[j] = 0;
            ++j;
        }
        if (j == t.size()) return;
        ++t[j];
    }
}

ProfileFamily two_block(int n, int first, std::function<bool(int, int)> pred) {
    ProfileFamily pf;
    pf.n = n;
    pf.lengths = {first, n - first};
    pf.member = [pred = std::move(pred)](std::span<const int> t) { return pred(t[0], t[1]); };
    return pf;
}

}  // namespace

std::string_view kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::P: return "P";
        case FamilyKind::Pprime: return "Pprime";
        case FamilyKind::Q: return "Q";
        case FamilyKind::W: return "W";
    }
    return "?";
}

FamilyKind parse_kind(std::string_view name) {
    if (name == "P") return FamilyKind::P;
    if (name == "Pprime" || name == "P'") return FamilyKind::Pprime;
    if (name == "Q") return FamilyKind::Q;
    if (name == "W") return FamilyKind::W;
    throw std::invalid_argument("unknown family kind: " + std::string(name));
}

std::vector<SetMask> ProfileFamily::interval_masks() const {
    std::vector<SetMask> out;
    int start = 1;
    for (int len : lengths) {
        out.push_back(interval_mask(start, start + len - 1));
        start += len;
    }
    return out;
}

bool ProfileFamily::contains(SetMask m) const {
    std::vector<int> t;
    t.reserve(lengths.size());
    for (SetMask iv : interval_masks()) t.push_back(set_size(m & iv));
    return member(t);
}

std::vector<std::uint64_t> ProfileFamily::missing_per_layer() const {
    std::vector<std::uint64_t> y(static_cast<std::size_t>(n) + 1, 0);
    for_each_profile(lengths, [&](std::span<const int> t) {
        if (member(t)) return;
        std::uint64_t ways = 1;
        int layer = 0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            ways *= binom(lengths[j], t[j]);
            layer += t[j];
        }
        y[layer] += ways;
    });
    return y;
}

std::vector<std::uint64_t> ProfileFamily::missing_per_layer_by_scan() const {
    if (n > kScanLimit) {
        throw std::invalid_argument("subset scan limited to n <= 30");
    }
    const auto masks = interval_masks();
    std::vector<std::uint64_t> y(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> t(masks.size());
    const SetMask end = SetMask{1} << n;
    for (SetMask m = 0; m < end; ++m) {
        for (std::size_t j = 0; j < masks.size(); ++j) t[j] = set_size(m & masks[j]);
        if (!member(t)) ++y[set_size(m)];
    }
    return y;
}

Family ProfileFamily::materialize() const {
    if (n > kMaterializeLimit) {
        throw std::invalid_argument("materialization limited to n <= 26");
    }
    const auto masks = interval_masks();
    std::vector<SetMask> out;
    std::vector<int> t(masks.size());
    const SetMask end = SetMask{1} << n;
    for (SetMask m = 0; m < end; ++m) {
        for (std::size_t j = 0; j < masks.size(); ++j) t[j] = set_size(m & masks[j]);
        if (member(t)) out.push_back(m);
    }
    return Family::from_canonical(n, std::move(out));
}

ProfileFamily profile_of(FamilyKind kind, const Params& p) {
    const int n = p.n;
    const int s = p.s;
    const int l = p.l;
    switch (kind) {
        case FamilyKind::P:
            return two_block(n, l - 1, [](int a, int b) { return 2 * a + b >= 3; });
        case FamilyKind::Pprime:
            return two_block(n, 2 * l - 1, [](int a, int b) { return a + b >= 3 || (a == 2 && b == 0); });
        case FamilyKind::Q:
            return two_block(n, s + l - 1, [](int a, int b) {
                if (a + b == 2) return a == 2;
                if (a + b == 3) return b != 3;
                return a + b > 3;
            });
        case FamilyKind::W:
            return two_block(n, 2 * s - 1, [](int a, int) { return a >= 2; });
    }
    throw std::invalid_argument("unknown family kind");
}

Family family_of(FamilyKind kind, const Params& p) { return profile_of(kind, p).materialize(); }
Family family_P(int s, int c) { return family_of(FamilyKind::P, make_params(s, c)); }
Family family_Pprime(int s, int c) { return family_of(FamilyKind::Pprime, make_params(s, c)); }
Family family_Q(int s, int c) { return family_of(FamilyKind::Q, make_params(s, c)); }
Family family_W(int s, int c) { return family_of(FamilyKind::W, make_params(s, c)); }

ProfileFamily profile_P_general(int s, int m, int l) {
    if (s < 1 || m < 1 || l < 1 || l > s) {
        throw std::invalid_argument("P_general requires s, m >= 1 and 0 < l <= s");
    }
    const int n = s * m + s - l;
    if (n > kMaxGround) {
        throw std::invalid_argument("P_general ground set exceeds 62");
    }
    return two_block(n, l - 1, [m](int a, int b) { return 2 * a + b >= m + 1; });
}

Family family_P_general(int s, int m, int l) { return profile_P_general(s, m, l).materialize(); }

Family family_A(int n, int k, int i, int s) {
    if (k < 1 || i < 1 || i > k || s < 1 || n < s * k || n > kMaxGround) {
        throw std::invalid_argument("family_A requires 1 <= i <= k, n >= sk, n <= 62");
    }
    const int head = std::min(n, s * i - 1);
    auto pf = two_block(n, head, [k, i](int a, int b) { return a + b == k && a >= i; });
    if (n > kMaterializeLimit) {
        throw std::invalid_argument("materialization limited to n <= 26");
    }
    // k-uniform: enumerate k-subsets directly instead of all of 2^n.
    std::vector<SetMask> out;
    const SetMask end = SetMask{1} << n;
    for (SetMask m = (SetMask{1} << k) - 1; m < end;) {
        if (pf.contains(m)) out.push_back(m);
        const SetMask low = m & -m;
        const SetMask ripple = m + low;
        m = ripple | (((m ^ ripple) >> 2) / low);
    }
    return Family::from_canonical(n, std::move(out));
}

Family family_kleitman(int n, int s) {
    if (s < 1 || n < 1 || n > kMaxGround) {
        throw std::invalid_argument("family_kleitman requires s >= 1 and 1 <= n <= 62");
    }
    if ((n + 1) % s == 0) {
        const int m = (n + 1) / s;
        return two_block(n, n, [m](int a, int) { return a >= m; }).materialize();
    }
    if (n % s == 0) {
        return doubling(family_kleitman(n - 1, s));
    }
    throw std::invalid_argument("family_kleitman requires n = sm - 1 or n = sm");
}

Rational FractionalCover::total() const {
    Rational sum;
    for (const Rational& w : weights) sum += w;
    return sum;
}

Rational FractionalCover::weight_of(SetMask m) const {
    Rational sum;
    for (int k : elements_of(m)) sum += weights.at(static_cast<std::size_t>(k) - 1);
    return sum;
}

FractionalCover certificate_for(FamilyKind kind, const Params& p) {
    int head = 0;
    Rational hi;
    Rational lo;
    switch (kind) {
        case FamilyKind::P: head = p.l - 1; hi = Rational(2, 3); lo = Rational(1, 3); break;
        case FamilyKind::Pprime: head = 2 * p.l - 1; hi = Rational(1, 2); lo = Rational(1, 3); break;
        case FamilyKind::Q: head = 2 * p.s - p.c - 1; hi = Rational(1, 2); lo = Rational(1, 4); break;
        case FamilyKind::W: head = 2 * p.s - 1; hi = Rational(1, 2); lo = Rational(0); break;
    }
    FractionalCover x;
    x.weights.reserve(static_cast<std::size_t>(p.n));
    for (int k = 1; k <= p.n; ++k) x.weights.push_back(k <= head ? hi : lo);
    return x;
}

bool verify_cover(const Family& f, const FractionalCover& x, int s) {
    if (x.weights.size() != static_cast<std::size_t>(f.n())) {
        throw std::invalid_argument("cover dimension differs from the ground set size");
    }
    if (std::any_of(x.weights.begin(), x.weights.end(), [](const Rational& w) { return w < Rational(0); })) {
        return false;
    }
    if (!(x.total() < Rational(s))) return false;
    return std::all_of(f.begin(), f.end(), [&](SetMask m) { return x.weight_of(m) >= Rational(1); });
}

bool verify_cover(const ProfileFamily& f, const FractionalCover& x, int s) {
    if (x.weights.size() != static_cast<std::size_t>(f.n)) {
        throw std::invalid_argument("cover dimension differs from the ground set size");
    }
    if (std::any_of(x.weights.begin(), x.weights.end(), [](const Rational& w) { return w < Rational(0); })) {
        return false;
    }
    if (!(x.total() < Rational(s))) return false;
    // Per interval, prefix sums of its weights in increasing order.
    std::vector<std::vector<Rational>> cheapest;
    std::size_t start = 0;
    for (int len : f.lengths) {
        std::vector<Rational> w(x.weights.begin() + static_cast<std::ptrdiff_t>(start),
                                x.weights.begin() + static_cast<std::ptrdiff_t>(start + len));
        std::sort(w.begin(), w.end());
        std::vector<Rational> prefix(1, Rational(0));
        for (const Rational& v : w) prefix.push_back(prefix.back() + v);
        cheapest.push_back(std::move(prefix));
        start += static_cast<std::size_t>(len);
    }
    bool ok = true;
    for_each_profile(f.lengths, [&](std::span<const int> t) {
        if (!ok || !f.member(t)) return;
        Rational w;
        for (std::size_t j = 0; j < t.size(); ++j) w += cheapest[j][t[j]];
        if (w < Rational(1)) ok = false;
    });
    return ok;
}

}  // namespace matchfree

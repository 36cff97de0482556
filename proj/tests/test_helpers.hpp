#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "ccalc/ring.hpp"

namespace testutil {

// Deterministic xorshift generator so property tests are reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : s_(seed) {}
    uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }
    int below(int n) { return n > 0 ? static_cast<int>(next() % n) : 0; }

private:
    uint64_t s_;
};

// Random element: a random combination of basis monomials.
inline ccalc::Elem random_elem(const ccalc::RingPtr& ring, Rng& rng, int max_terms = 4) {
    std::vector<ccalc::Mon> mons;
    for (auto bd : ring->occupied_bidegrees())
        for (const auto& m : ring->basis(bd)) mons.push_back(m);
    std::map<ccalc::Mon, ccalc::Fp> terms;
    int k = 1 + rng.below(max_terms);
    for (int i = 0; i < k && !mons.empty(); ++i) {
        const ccalc::Mon& m = mons[rng.below(static_cast<int>(mons.size()))];
        ccalc::Fp c(ring->prime(), rng.below(static_cast<int>(ring->prime())));
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) it->second += c;
    }
    return ccalc::Elem(ring, terms);
}

// Number of partitions of `size` fitting in a k x m box.  Independent
// combinatorial oracle for Grassmannian bidegree dimensions.
inline long partitions_in_box(int k, int m, int size) {
    std::function<long(int, int, int)> rec = [&](int maxpart, int remaining,
                                                 int slots) -> long {
        if (remaining == 0) return 1;
        if (slots == 0 || maxpart == 0) return 0;
        long total = 0;
        for (int p = std::min(maxpart, remaining); p >= 1; --p)
            total += rec(p, remaining - p, slots - 1);
        return total;
    };
    return rec(m, size, k);
}

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace testutil

#pragma once

#include <random>
#include <vector>

#include "gtzeta/weight.hpp"

namespace testsupport {

using gtzeta::Weight;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eed1234ULL);
    return gen;
}

inline long rand_int(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng());
}

/// Random dominant weight with entries in [lo, hi].
inline Weight random_dominant(int n, long lo, long hi) {
    std::vector<long> v(static_cast<size_t>(n));
    for (auto& x : v) x = rand_int(lo, hi);
    std::sort(v.begin(), v.end(), std::greater<long>());
    return Weight(std::move(v));
}

/// Random dominant weight with first-last spread at most `spread`,
/// bottom entry in [base_lo, base_hi].
inline Weight random_dominant_spread(int n, long spread, long base_lo, long base_hi) {
    long base = rand_int(base_lo, base_hi);
    std::vector<long> v(static_cast<size_t>(n));
    for (auto& x : v) x = base + rand_int(0, spread);
    std::sort(v.begin(), v.end(), std::greater<long>());
    return Weight(std::move(v));
}

/// Every dominant lambda of length n with spread <= s and lambda_n in [off_lo, off_hi].
inline std::vector<Weight> all_dominant(int n, long s, long off_lo, long off_hi) {
    std::vector<Weight> out;
    std::vector<long> diffs(static_cast<size_t>(n - 1), 0);
    std::function<void(int, long)> rec = [&](int k, long used) {
        if (k == n - 1) {
            for (long base = off_lo; base <= off_hi; ++base) {
                std::vector<long> v(static_cast<size_t>(n));
                v[static_cast<size_t>(n - 1)] = base;
                for (int i = n - 2; i >= 0; --i)
                    v[static_cast<size_t>(i)] = v[static_cast<size_t>(i + 1)] + diffs[static_cast<size_t>(i)];
                out.emplace_back(std::move(v));
            }
            return;
        }
        for (long d = 0; used + d <= s; ++d) {
            diffs[static_cast<size_t>(k)] = d;
            rec(k + 1, used + d);
        }
    };
    if (n == 1) {
        for (long base = off_lo; base <= off_hi; ++base) out.push_back(Weight({base}));
    } else {
        rec(0, 0);
    }
    return out;
}

}  // namespace testsupport

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gtzeta/error.hpp"
#include "gtzeta/rational.hpp"

namespace gtzeta {

/// Integral weight (lambda_1, ..., lambda_n) of GL_n.
struct Weight {
    std::vector<long> v;

    Weight() = default;
    explicit Weight(std::vector<long> entries) : v(std::move(entries)) {}
    Weight(std::initializer_list<long> entries) : v(entries) {}

    int n() const { return static_cast<int>(v.size()); }
    long operator[](int i) const { return v[static_cast<size_t>(i)]; }
    long& operator[](int i) { return v[static_cast<size_t>(i)]; }

    bool is_dominant() const {
        for (size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i] < v[i + 1]) return false;
        return true;
    }

    /// lambda^vee = (-lambda_n, ..., -lambda_1).
    Weight dual() const {
        std::vector<long> d(v.rbegin(), v.rend());
        for (auto& x : d) x = -x;
        return Weight(std::move(d));
    }

    Weight shifted(long l) const {
        Weight w = *this;
        for (auto& x : w.v) x += l;
        return w;
    }

    long sum() const { return std::accumulate(v.begin(), v.end(), 0L); }
    long spread() const { return v.empty() ? 0 : v.front() - v.back(); }

    friend Weight operator+(const Weight& a, const Weight& b) {
        if (a.n() != b.n()) throw Error(Errc::length_mismatch, "weight length mismatch");
        Weight r = a;
        for (int i = 0; i < b.n(); ++i) r.v[static_cast<size_t>(i)] += b[i];
        return r;
    }
    friend Weight operator-(const Weight& a, const Weight& b) {
        if (a.n() != b.n()) throw Error(Errc::length_mismatch, "weight length mismatch");
        Weight r = a;
        for (int i = 0; i < b.n(); ++i) r.v[static_cast<size_t>(i)] -= b[i];
        return r;
    }
    friend bool operator==(const Weight& a, const Weight& b) { return a.v == b.v; }
    friend bool operator!=(const Weight& a, const Weight& b) { return a.v != b.v; }
    friend bool operator<(const Weight& a, const Weight& b) { return a.v < b.v; }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    }
};

inline void require_dominant(const Weight& w, const char* ctx) {
    if (!w.is_dominant())
        throw Error(Errc::invalid_weight, std::string(ctx) + ": weight not dominant: " + w.str());
}

/// 2*rho_n = (n-1, n-3, ..., 1-n); rho itself is half-integral, so the doubled
/// weight is the one carried through every API.
inline Weight rho2(int n) {
    std::vector<long> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = n - 1 - 2 * i;
    return Weight(std::move(v));
}

/// lambda interlaces mu: lambda_1 >= mu_1 >= lambda_2 >= ... >= mu_{n-1} >= lambda_n.
inline bool interlaces(const Weight& lambda, const Weight& mu) {
    if (mu.n() != lambda.n() - 1)
        throw Error(Errc::length_mismatch, "interlaces: expected lengths n and n-1");
    for (int i = 0; i < mu.n(); ++i)
        if (!(lambda[i] >= mu[i] && mu[i] >= lambda[i + 1])) return false;
    return true;
}

/// Weyl dimension of V_lambda: prod_{i<j} (lambda_i - lambda_j + j - i)/(j - i).
inline BigInt weyl_dim(const Weight& lambda) {
    require_dominant(lambda, "weyl_dim");
    const int n = lambda.n();
    BigInt num(1), den(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= BigInt(lambda[i] - lambda[j] + j - i);
            den *= BigInt(j - i);
        }
    return num / den;
}

inline size_t hash_combine(size_t seed, size_t h) {
    return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct WeightHash {
    size_t operator()(const Weight& w) const {
        size_t h = w.v.size();
        for (long x : w.v) h = hash_combine(h, std::hash<long>()(x));
        return h;
    }
};

}  // namespace gtzeta

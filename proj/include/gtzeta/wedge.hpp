#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "gtzeta/action.hpp"
#include "gtzeta/error.hpp"
#include "gtzeta/molev.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rep_vector.hpp"

namespace gtzeta {

/// Basis index of p^vee: the pair (i,j) in [1..n]^2 encoded row-major.
inline int pair_code(int n, int i, int j) { return (i - 1) * n + (j - 1); }
inline std::pair<int, int> code_pair(int n, int code) {
    return {code / n + 1, code % n + 1};
}

/// Element of the exterior algebra of p^vee_n: finitely supported map from
/// strictly increasing code sequences to rationals, degree homogeneous.
struct WedgeElement {
    int n = 0;
    int degree = 0;
    std::map<std::vector<int>, Rat> coords;

    WedgeElement() = default;
    WedgeElement(int size, int deg) : n(size), degree(deg) {}

    static WedgeElement scalar(int size, const Rat& c) {
        WedgeElement w(size, 0);
        if (!c.is_zero()) w.coords[{}] = c;
        return w;
    }

    bool is_zero() const { return coords.empty(); }

    /// Inserts a possibly unsorted, possibly repeating monomial with its sign.
    void add_monomial(std::vector<int> idx, Rat c) {
        if (c.is_zero()) return;
        long swaps = 0;
        for (size_t a = 1; a < idx.size(); ++a)
            for (size_t b = a; b > 0 && idx[b] < idx[b - 1]; --b) {
                std::swap(idx[b], idx[b - 1]);
                ++swaps;
            }
        for (size_t a = 1; a < idx.size(); ++a)
            if (idx[a] == idx[a - 1]) return;
        if (swaps % 2) c = -c;
        auto it = coords.find(idx);
        if (it == coords.end()) {
            coords.emplace(std::move(idx), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coords.erase(it);
        }
    }

    WedgeElement& operator+=(const WedgeElement& o) {
        if (is_zero() && n == 0) return *this = o, *this;
        if (o.is_zero()) return *this;
        if (n != o.n || degree != o.degree)
            throw Error(Errc::degree_mismatch, "wedge sum: degree or size mismatch");
        for (const auto& [k, c] : o.coords) {
            auto it = coords.find(k);
            if (it == coords.end()) {
                coords.emplace(k, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) coords.erase(it);
            }
        }
        return *this;
    }

    WedgeElement& operator*=(const Rat& c) {
        if (c.is_zero()) {
            coords.clear();
            return *this;
        }
        for (auto& [k, v] : coords) v *= c;
        return *this;
    }

    friend WedgeElement operator*(WedgeElement w, const Rat& c) { return w *= c; }
    friend bool operator==(const WedgeElement& a, const WedgeElement& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.n == b.n && a.degree == b.degree && a.coords == b.coords;
    }
    friend bool operator!=(const WedgeElement& a, const WedgeElement& b) { return !(a == b); }

    friend WedgeElement wedge(const WedgeElement& a, const WedgeElement& b) {
        if (a.n != b.n) throw Error(Errc::length_mismatch, "wedge: size mismatch");
        WedgeElement out(a.n, a.degree + b.degree);
        for (const auto& [ka, ca] : a.coords)
            for (const auto& [kb, cb] : b.coords) {
                std::vector<int> idx = ka;
                idx.insert(idx.end(), kb.begin(), kb.end());
                out.add_monomial(std::move(idx), ca * cb);
            }
        return out;
    }
};

/// ad^vee(E^{u(n)}_{a,b}) as a derivation:
/// E^{p vee}_{i,j} -> d_{j,b} E^{p vee}_{i,a} - d_{i,a} E^{p vee}_{b,j}.
inline WedgeElement ad_dual(int a, int b, const WedgeElement& w) {
    const int n = w.n;
    if (n == 0) return w;
    if (!(1 <= a && a <= n && 1 <= b && b <= n))
        throw Error(Errc::index_out_of_range, "ad_dual: index out of range");
    WedgeElement out(n, w.degree);
    for (const auto& [key, c] : w.coords)
        for (size_t t = 0; t < key.size(); ++t) {
            auto [i, j] = code_pair(n, key[t]);
            if (j == b) {
                std::vector<int> idx = key;
                idx[t] = pair_code(n, i, a);
                out.add_monomial(std::move(idx), c);
            }
            if (i == a) {
                std::vector<int> idx = key;
                idx[t] = pair_code(n, b, j);
                out.add_monomial(std::move(idx), -c);
            }
        }
    return out;
}

/// Ad^vee(w_n): transposes every factor E^{p vee}_{i,j} -> E^{p vee}_{j,i}.
inline WedgeElement ad_dual_wn(const WedgeElement& w) {
    WedgeElement out(w.n, w.degree);
    for (const auto& [key, c] : w.coords) {
        std::vector<int> idx;
        idx.reserve(key.size());
        for (int code : key) {
            auto [i, j] = code_pair(w.n, code);
            idx.push_back(pair_code(w.n, j, i));
        }
        out.add_monomial(std::move(idx), c);
    }
    return out;
}

/// The highest weight vector of Lambda^{b_n} p^{0 vee}: the wedge of all
/// strictly-lower-triangular duals in the displayed order.
inline WedgeElement highest_wedge(int n) {
    if (n < 1) throw Error(Errc::index_out_of_range, "highest_wedge: n >= 1");
    std::vector<int> idx;
    for (int i = 2; i <= n; ++i)
        for (int j = 1; j < i; ++j) idx.push_back(pair_code(n, i, j));
    WedgeElement w(n, static_cast<int>(idx.size()));
    w.add_monomial(std::move(idx), Rat(1));
    return w;
}

namespace detail {

/// The fixed orientation E^vee_{p_{n-1}}: codes in the (n-1)-grid, in the
/// displayed order (lower triangle with diagonal, then strict upper triangle).
inline std::vector<int> bold_e_order(int nm1) {
    std::vector<int> idx;
    for (int i = 1; i <= nm1; ++i)
        for (int j = 1; j <= i; ++j) idx.push_back(pair_code(nm1, i, j));
    for (int j = 2; j <= nm1; ++j)
        for (int i = 1; i < j; ++i) idx.push_back(pair_code(nm1, i, j));
    return idx;
}

inline int perm_sign(std::vector<int> idx) {
    long swaps = 0;
    for (size_t a = 1; a < idx.size(); ++a)
        for (size_t b = a; b > 0 && idx[b] < idx[b - 1]; --b) {
            std::swap(idx[b], idx[b - 1]);
            ++swaps;
        }
    return swaps % 2 ? -1 : 1;
}

}  // namespace detail

/// Restriction along iota_n: kills every factor with an index equal to n and
/// reindexes the survivors into the (n-1)-grid.
inline WedgeElement restrict_iota(const WedgeElement& w) {
    const int n = w.n;
    if (n < 2) throw Error(Errc::index_out_of_range, "restrict_iota: n >= 2");
    WedgeElement out(n - 1, w.degree);
    for (const auto& [key, c] : w.coords) {
        std::vector<int> idx;
        idx.reserve(key.size());
        bool dead = false;
        for (int code : key) {
            auto [i, j] = code_pair(n, code);
            if (i == n || j == n) {
                dead = true;
                break;
            }
            idx.push_back(pair_code(n - 1, i, j));  // row-major order is preserved
        }
        if (dead) continue;
        auto it = out.coords.find(idx);
        if (it == out.coords.end()) {
            out.coords.emplace(std::move(idx), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) out.coords.erase(it);
        }
    }
    return out;
}

/// s_n(omega, omega'): the scalar with iota^vee(omega) ^ omega' =
/// s_n E^vee_{p_{n-1}}, for degrees b_n and b_{n-1}.
inline Rat s_pairing(const WedgeElement& w, const WedgeElement& wp) {
    const int n = w.n;
    if (n < 2 || wp.n != n - 1)
        throw Error(Errc::length_mismatch, "s_pairing: need sizes n and n-1");
    const int bn = n * (n - 1) / 2, bn1 = (n - 1) * (n - 2) / 2;
    if (w.degree != bn || wp.degree != bn1)
        throw Error(Errc::degree_mismatch, "s_pairing: degrees must be b_n and b_{n-1}");
    WedgeElement top = wedge(restrict_iota(w), wp);
    if (top.is_zero()) return Rat(0);
    // top is a multiple of the full sorted monomial of all (n-1)^2 codes
    if (top.coords.size() != 1)
        throw Error(Errc::internal_consistency, "s_pairing: top form not a single monomial");
    const Rat c = top.coords.begin()->second;
    return c * Rat(detail::perm_sign(detail::bold_e_order(n - 1)));
}

/// Module adapter for the operator calculus on the wedge space.
struct WedgeModule {
    int n;
    using V = WedgeElement;
    V applyE(int i, int j, const V& v) const { return ad_dual(i, j, v); }
};

namespace detail {

class Inject2RhoTable {
public:
    explicit Inject2RhoTable(int n) : n_(n), lambda_(rho2(n)) {}

    const WedgeElement& image(const GTPattern& m) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        WedgeModule mod{n_};
        WedgeElement img = apply_Dminus(mod, m, highest_wedge(n_));
        img *= m.r1().inverse();
        return memo_.emplace(m, std::move(img)).first->second;
    }

    const Weight& lambda() const { return lambda_; }

private:
    int n_;
    Weight lambda_;
    std::mutex mu_;
    std::map<GTPattern, WedgeElement> memo_;
};

inline Inject2RhoTable& inject_2rho_table(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Inject2RhoTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Inject2RhoTable>(n)).first;
    return *it->second;
}

}  // namespace detail

/// I^{p_n}_{2 rho_n}: V_{2 rho_n} -> Lambda^{b_n} p^{0 vee}, the equivariant
/// map sending xi_{H(2 rho_n)} to the highest wedge.
inline WedgeElement inject_2rho(int n, const RepVector& v) {
    auto& table = detail::inject_2rho_table(n);
    if (!v.is_zero() && v.lambda != table.lambda())
        throw Error(Errc::weight_mismatch, "inject_2rho: vector not of type 2 rho_n");
    WedgeElement out(n, n * (n - 1) / 2);
    for (const auto& [m, c] : v.coords) {
        WedgeElement part = table.image(m);
        part *= c;
        out += part;
    }
    return out;
}

}  // namespace gtzeta

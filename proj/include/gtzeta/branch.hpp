#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "gtzeta/action.hpp"
#include "gtzeta/det_model.hpp"
#include "gtzeta/error.hpp"
#include "gtzeta/molev.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rep_vector.hpp"

namespace gtzeta {

/// I^lambda_mu: xi_M -> xi_{M[lambda]}.
inline RepVector branch_inject(const Weight& lambda, const Weight& mu, const RepVector& v) {
    if (!interlaces(lambda, mu))
        throw Error(Errc::interlacing_violation, "branch_inject: mu must interlace lambda");
    RepVector out(lambda);
    for (const auto& [m, c] : v.coords) out.add(m.stacked(lambda), c);
    return out;
}

/// R^lambda_mu: xi_M -> xi_{M-hat} when the hat lands in G(mu), else 0.
inline RepVector branch_restrict(const Weight& lambda, const Weight& mu, const RepVector& v) {
    if (!interlaces(lambda, mu))
        throw Error(Errc::interlacing_violation, "branch_restrict: mu must interlace lambda");
    const auto& tab = pattern_table(mu);
    RepVector out(mu);
    for (const auto& [m, c] : v.coords) {
        GTPattern h = m.hat();
        if (tab.contains(h)) out.add(h, c);
    }
    return out;
}

/// Vector in V_lambda (x) V_lambda', coordinates on xi_M (x) xi_M'.
struct TensorVector {
    Weight lambda, lambdap;
    std::map<std::pair<GTPattern, GTPattern>, Rat> coords;

    TensorVector() = default;
    TensorVector(Weight a, Weight b) : lambda(std::move(a)), lambdap(std::move(b)) {}

    bool is_zero() const { return coords.empty(); }

    void add(const GTPattern& m, const GTPattern& mp, const Rat& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(m, mp);
        auto it = coords.find(key);
        if (it == coords.end()) {
            coords.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coords.erase(it);
        }
    }

    Rat at(const GTPattern& m, const GTPattern& mp) const {
        auto it = coords.find(std::make_pair(m, mp));
        return it == coords.end() ? Rat(0) : it->second;
    }

    TensorVector& operator+=(const TensorVector& o) {
        if (is_zero() && lambda.n() == 0) {
            lambda = o.lambda;
            lambdap = o.lambdap;
        }
        for (const auto& [k, c] : o.coords) add(k.first, k.second, c);
        return *this;
    }

    TensorVector& operator*=(const Rat& c) {
        if (c.is_zero()) {
            coords.clear();
            return *this;
        }
        for (auto& [k, v] : coords) v *= c;
        return *this;
    }

    friend TensorVector operator*(TensorVector t, const Rat& c) { return t *= c; }
    friend bool operator==(const TensorVector& a, const TensorVector& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.lambda == b.lambda && a.lambdap == b.lambdap && a.coords == b.coords;
    }
    friend bool operator!=(const TensorVector& a, const TensorVector& b) { return !(a == b); }
};

/// Tensor module with the Leibniz action through the GT matrices of both legs.
struct TensorModule {
    Weight lambda, lambdap;
    using V = TensorVector;
    V applyE(int i, int j, const V& v) const {
        V out(lambda, lambdap);
        const auto& a = matrix_E(lambda, i, j);
        const auto& b = matrix_E(lambdap, i, j);
        const auto& taba = pattern_table(lambda);
        const auto& tabb = pattern_table(lambdap);
        for (const auto& [key, c] : v.coords) {
            long ia = taba.index_of(key.first), ib = tabb.index_of(key.second);
            if (ia < 0 || ib < 0)
                throw Error(Errc::invalid_pattern, "tensor action: pattern outside type");
            if (auto it = a.entries.find(static_cast<size_t>(ia)); it != a.entries.end())
                for (const auto& [to, coef] : it->second)
                    out.add(taba.at(to), key.second, c * coef);
            if (auto it = b.entries.find(static_cast<size_t>(ib)); it != b.entries.end())
                for (const auto& [to, coef] : it->second)
                    out.add(key.first, tabb.at(to), c * coef);
        }
        return out;
    }
};

namespace detail {

/// Per-(lambda, lambda') table of Cartan injector expansions, built lazily:
/// I(xi_{M''}) = r1(M'')^{-1} D^-_{M''} (xi_{H(lambda)} (x) xi_{H(lambda')}).
class CartanTable {
public:
    CartanTable(Weight lambda, Weight lambdap)
        : lambda_(std::move(lambda)), lambdap_(std::move(lambdap)) {}

    const TensorVector& expansion(const GTPattern& mpp) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(mpp);
        if (it != memo_.end()) return it->second;
        TensorModule mod{lambda_, lambdap_};
        TensorVector seed(lambda_, lambdap_);
        seed.add(highest_pattern(lambda_), highest_pattern(lambdap_), Rat(1));
        TensorVector img = apply_Dminus(mod, mpp, seed);
        img *= mpp.r1().inverse();
        return memo_.emplace(mpp, std::move(img)).first->second;
    }

private:
    Weight lambda_, lambdap_;
    std::mutex mu_;
    std::map<GTPattern, TensorVector> memo_;
};

inline CartanTable& cartan_table(const Weight& lambda, const Weight& lambdap) {
    static std::mutex mu;
    static std::map<std::pair<Weight, Weight>, std::unique_ptr<CartanTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(lambda, lambdap);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<CartanTable>(lambda, lambdap)).first;
    return *it->second;
}

}  // namespace detail

/// Cartan injector I^{lambda,lambda'}_{lambda+lambda'} applied to a vector of
/// type lambda+lambda'.
inline TensorVector cartan_inject(const Weight& lambda, const Weight& lambdap,
                                  const RepVector& v) {
    require_dominant(lambda, "cartan_inject");
    require_dominant(lambdap, "cartan_inject");
    if (lambda.n() != lambdap.n())
        throw Error(Errc::length_mismatch, "cartan_inject: ranks differ");
    if (!v.is_zero() && v.lambda != lambda + lambdap)
        throw Error(Errc::weight_mismatch, "cartan_inject: vector not of type lambda+lambda'");
    auto& table = detail::cartan_table(lambda, lambdap);
    TensorVector out(lambda, lambdap);
    for (const auto& [m, c] : v.coords) {
        TensorVector part = table.expansion(m);
        part *= c;
        out += part;
    }
    if (out.is_zero()) return TensorVector(lambda, lambdap);
    return out;
}

/// Single Cartan coefficient c^{M,M'}_{M''}.
inline Rat cartan_coefficient(const Weight& lambda, const Weight& lambdap,
                              const GTPattern& m, const GTPattern& mp, const GTPattern& mpp) {
    return detail::cartan_table(lambda, lambdap).expansion(mpp).at(m, mp);
}

/// R^{lambda,lambda'}_{lambda+lambda'}: multiply in the polynomial model and
/// express against the xi basis of the Cartan component.
inline RepVector cartan_project(const Weight& lambda, const Weight& lambdap,
                                const TensorVector& t) {
    const Weight sum = lambda + lambdap;
    RepVector out(sum);
    for (const auto& [key, c] : t.coords) {
        PolyVector prod = xi_polynomial(lambda, key.first) * xi_polynomial(lambdap, key.second);
        for (auto& [m, coef] : coords_in_xi(sum, prod)) out.add(m, coef * c);
    }
    return out;
}

/// Determinantal-oracle route for the injector coefficients: the same lowering
/// performed on polynomial tensors, then solved leg by leg against the xi bases.
inline TensorVector cartan_inject_oracle(const Weight& lambda, const Weight& lambdap,
                                         const GTPattern& mpp) {
    struct DetTensor {
        int n = 0;
        std::map<std::pair<Monomial, Monomial>, Rat> terms;
        long off1 = 0, off2 = 0;

        bool is_zero() const { return terms.empty(); }
        void add(const Monomial& a, const Monomial& b, const Rat& c) {
            if (c.is_zero()) return;
            auto key = std::make_pair(a, b);
            auto it = terms.find(key);
            if (it == terms.end()) {
                terms.emplace(std::move(key), c);
            } else {
                it->second += c;
                if (it->second.is_zero()) terms.erase(it);
            }
        }
        DetTensor& operator+=(const DetTensor& o) {
            if (is_zero()) return *this = o, *this;
            for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
            return *this;
        }
        DetTensor& operator*=(const Rat& c) {
            if (c.is_zero()) {
                terms.clear();
                return *this;
            }
            for (auto& [k, v] : terms) v *= c;
            return *this;
        }
    };
    struct DetTensorModule {
        int n;
        long off1, off2;
        using V = DetTensor;
        V applyE(int i, int j, const V& v) const {
            V out;
            out.n = n;
            out.off1 = off1;
            out.off2 = off2;
            auto derive = [&](const Monomial& m, long off, auto&& emit) {
                for (int a = 1; a <= n; ++a) {
                    int32_t e = m.e[static_cast<size_t>((a - 1) * n + (j - 1))];
                    if (e == 0) continue;
                    Monomial t = m;
                    t.e[static_cast<size_t>((a - 1) * n + (j - 1))] -= 1;
                    t.e[static_cast<size_t>((a - 1) * n + (i - 1))] += 1;
                    emit(t, Rat(e));
                }
                if (i == j && off != 0) emit(m, Rat(off));
            };
            for (const auto& [key, c] : v.terms) {
                derive(key.first, off1,
                       [&](const Monomial& t, const Rat& f) { out.add(t, key.second, c * f); });
                derive(key.second, off2,
                       [&](const Monomial& t, const Rat& f) { out.add(key.first, t, c * f); });
            }
            return out;
        }
    };

    const int n = lambda.n();
    PolyVector h1 = generator_f(lambda, h_of(lambda));
    PolyVector h2 = generator_f(lambdap, h_of(lambdap));
    DetTensorModule mod{n, h1.det_offset, h2.det_offset};
    DetTensor seed;
    seed.n = n;
    seed.off1 = h1.det_offset;
    seed.off2 = h2.det_offset;
    for (const auto& [m1, c1] : h1.terms)
        for (const auto& [m2, c2] : h2.terms) seed.add(m1, m2, c1 * c2);
    DetTensor img = apply_Dminus(mod, mpp, seed);
    img *= mpp.r1().inverse();

    // solve leg 1 for each fixed right monomial, then leg 2
    std::map<Monomial, PolyVector> by_right;
    for (const auto& [key, c] : img.terms) {
        auto& p = by_right[key.second];
        if (p.n == 0) p = PolyVector(n, h1.det_offset);
        p.add_term(key.first, c);
    }
    std::map<GTPattern, PolyVector> left_coords;
    for (const auto& [m2, p] : by_right)
        for (auto& [m, c] : coords_in_xi(lambda, p)) {
            auto& q = left_coords[m];
            if (q.n == 0) q = PolyVector(n, h2.det_offset);
            q.add_term(m2, c);
        }
    TensorVector out(lambda, lambdap);
    for (const auto& [m, q] : left_coords)
        for (auto& [mp, c] : coords_in_xi(lambdap, q)) out.add(m, mp, c);
    return out;
}

}  // namespace gtzeta

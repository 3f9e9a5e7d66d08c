#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "gtzeta/error.hpp"
#include "gtzeta/molev.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rational.hpp"
#include "gtzeta/rep_vector.hpp"
#include "gtzeta/weight.hpp"

namespace gtzeta {

namespace detail {

/// Squared single-step coefficient a_{r,a}(M)^2 for the target M + Delta_{r,a}.
/// Only called when the target pattern is valid, which keeps the denominator
/// away from zero.
inline Rat a_squared(const GTPattern& m, int r, int a) {
    BigInt num(1), den(1);
    for (int h = 1; h <= a + 1; ++h) num *= BigInt(m.at(h, a + 1) - m.at(r, a) - h + r);
    if (a >= 2)
        for (int h = 1; h <= a - 1; ++h) num *= BigInt(m.at(h, a - 1) - m.at(r, a) - h + r - 1);
    for (int h = 1; h <= a; ++h) {
        if (h == r) continue;
        den *= BigInt(m.at(h, a) - m.at(r, a) - h + r);
        den *= BigInt(m.at(h, a) - m.at(r, a) - h + r - 1);
    }
    return Rat(abs(num), abs(den));
}

inline Rat sqrt_or_die(const Rat& square, const char* ctx) {
    auto root = square.sqrt_exact();
    if (!root)
        throw Error(Errc::internal_consistency,
                    std::string(ctx) + ": coefficient square " + square.str() +
                        " is not a perfect square");
    return *root;
}

}  // namespace detail

/// Sparse matrix of tau_lambda(E_{i,j}) in the xi basis, rows keyed by source
/// pattern index into pattern_table(lambda).
class ActionMatrix {
public:
    Weight lambda;
    int i = 0, j = 0;
    // entries[from] = sorted list of (to, coefficient)
    std::map<size_t, std::vector<std::pair<size_t, Rat>>> entries;

    const PatternTable& table() const { return pattern_table(lambda); }

    void add(size_t from, size_t to, const Rat& c) {
        if (c.is_zero()) return;
        auto& row = entries[from];
        for (auto& [t, v] : row)
            if (t == to) {
                v += c;
                if (v.is_zero())
                    row.erase(std::find_if(row.begin(), row.end(),
                                           [&](auto& p) { return p.first == to; }));
                return;
            }
        row.emplace_back(to, c);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (row.empty()) entries.erase(from);
    }

    RepVector apply(const RepVector& v) const {
        const auto& tab = table();
        RepVector out(lambda);
        for (const auto& [m, c] : v.coords) {
            long from = tab.index_of(m);
            if (from < 0)
                throw Error(Errc::invalid_pattern, "act: pattern outside G(lambda)");
            auto it = entries.find(static_cast<size_t>(from));
            if (it == entries.end()) continue;
            for (const auto& [to, coef] : it->second) out.add(tab.at(to), c * coef);
        }
        return out;
    }
};

namespace detail {

inline ActionMatrix matrix_product_commutator(const ActionMatrix& a, const ActionMatrix& b,
                                              int i, int j) {
    // [a, b] as operators: apply b then a, minus apply a then b
    ActionMatrix out;
    out.lambda = a.lambda;
    out.i = i;
    out.j = j;
    auto compose = [&](const ActionMatrix& first, const ActionMatrix& second, const Rat& sign) {
        for (const auto& [from, row1] : first.entries)
            for (const auto& [mid, c1] : row1) {
                auto it = second.entries.find(mid);
                if (it == second.entries.end()) continue;
                for (const auto& [to, c2] : it->second) out.add(from, to, sign * c1 * c2);
            }
    };
    compose(b, a, Rat(1));   // a . b
    compose(a, b, Rat(-1));  // - b . a
    return out;
}

}  // namespace detail

/// Matrix of tau_lambda(E_{i,j}), memoised per (lambda, i, j).
inline const ActionMatrix& matrix_E(const Weight& lambda, int i, int j) {
    require_dominant(lambda, "matrix_E");
    const int n = lambda.n();
    if (!(1 <= i && i <= n && 1 <= j && j <= n))
        throw Error(Errc::index_out_of_range, "matrix_E: index out of range");

    using Key = std::tuple<Weight, int, int>;
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<ActionMatrix>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto found = cache.find(Key{lambda, i, j});
    if (found != cache.end()) return *found->second;

    std::function<ActionMatrix(int, int)> build = [&](int a, int b) -> ActionMatrix {
        ActionMatrix m;
        m.lambda = lambda;
        m.i = a;
        m.j = b;
        const auto& tab = pattern_table(lambda);
        if (a == b) {
            for (size_t k = 0; k < tab.size(); ++k)
                m.add(k, k, Rat(tab.at(k).weight()[a - 1]));
            return m;
        }
        if (b == a + 1) {
            // raising along row a
            for (size_t k = 0; k < tab.size(); ++k) {
                const GTPattern& src = tab.at(k);
                for (int r = 1; r <= a; ++r) {
                    GTPattern dst = src;
                    dst.at(r, a) += 1;
                    long to = tab.index_of(dst);
                    if (to < 0 || !dst.is_valid()) continue;
                    Rat csq = detail::a_squared(src, r, a) * src.r() / dst.r();
                    m.add(k, static_cast<size_t>(to), detail::sqrt_or_die(csq, "matrix_E"));
                }
            }
            return m;
        }
        if (a == b + 1) {
            // lowering along row b, through the dual pattern
            for (size_t k = 0; k < tab.size(); ++k) {
                const GTPattern& src = tab.at(k);
                const GTPattern dualsrc = src.dual();
                for (int r = 1; r <= b; ++r) {
                    GTPattern dst = src;
                    dst.at(b + 1 - r, b) -= 1;
                    long to = tab.index_of(dst);
                    if (to < 0 || !dst.is_valid()) continue;
                    Rat csq = detail::a_squared(dualsrc, r, b) * src.r() / dst.r();
                    m.add(k, static_cast<size_t>(to), detail::sqrt_or_die(csq, "matrix_E"));
                }
            }
            return m;
        }
        if (b > a) {
            auto lhs = build(a, b - 1);
            auto rhs = build(b - 1, b);
            return detail::matrix_product_commutator(lhs, rhs, a, b);
        }
        auto lhs = build(a, a - 1);
        auto rhs = build(a - 1, b);
        return detail::matrix_product_commutator(lhs, rhs, a, b);
    };

    // populate the whole band chain so the recursion is shared
    auto result = std::make_unique<ActionMatrix>(build(i, j));
    auto it = cache.emplace(Key{lambda, i, j}, std::move(result)).first;
    return *it->second;
}

inline RepVector act(const Weight& lambda, int i, int j, const RepVector& v) {
    if (v.lambda != lambda && !v.is_zero())
        throw Error(Errc::weight_mismatch, "act: vector of a different type");
    return matrix_E(lambda, i, j).apply(v);
}

/// Module adapter over the GT basis, for the operator calculus.
struct GTModule {
    Weight lambda;
    using V = RepVector;
    V applyE(int i, int j, const V& v) const {
        if (v.is_zero()) return v;
        return matrix_E(lambda, i, j).apply(v);
    }
};

/// tau(D^-_M) v  and  tau(D^+_M) v on GT coordinates.
inline RepVector apply_Dminus_gt(const Weight& lambda, const GTPattern& m, const RepVector& v) {
    return apply_Dminus(GTModule{lambda}, m, v);
}
inline RepVector apply_Dplus_gt(const Weight& lambda, const GTPattern& m, const RepVector& v) {
    return apply_Dplus(GTModule{lambda}, m, v);
}

namespace detail {

/// S-degree bookkeeping for the closed power formula: factorial products with
/// the Gamma convention that a negative argument in a denominator kills the
/// term (returned as nullopt when the whole product must vanish).
struct SProduct {
    Rat value{1};
    bool zero = false;  // a denominator factorial had a negative argument

    void mul_fact(long x) {
        if (zero) return;
        if (x < 0) throw Error(Errc::internal_consistency, "negative factorial in numerator");
        value *= rat_factorial(x);
    }
    void div_fact(long x) {
        if (zero) return;
        if (x < 0) {
            zero = true;
            return;
        }
        value /= rat_factorial(x);
    }
};

inline void s_circ(SProduct& acc, const std::vector<long>& lp, const std::vector<long>& lam,
                   bool inverted) {
    const int n = static_cast<int>(lam.size());
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            long x = lp[static_cast<size_t>(i - 1)] - lam[static_cast<size_t>(j - 1)] - i + j;
            inverted ? acc.div_fact(x) : acc.mul_fact(x);
        }
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i; j <= n - 1; ++j) {
            long x = lam[static_cast<size_t>(i - 1)] - lp[static_cast<size_t>(j)] - i + j;
            inverted ? acc.mul_fact(x) : acc.div_fact(x);
        }
}

inline void s_plus(SProduct& acc, const std::vector<long>& lam, const std::vector<long>& mu,
                   bool inverted) {
    const int n = static_cast<int>(lam.size());
    if (n == 1) return;  // empty product by convention
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i; j <= n - 1; ++j) {
            long x = lam[static_cast<size_t>(i - 1)] - mu[static_cast<size_t>(j - 1)] - i + j;
            inverted ? acc.div_fact(x) : acc.mul_fact(x);
            long y = mu[static_cast<size_t>(i - 1)] - lam[static_cast<size_t>(j)] - i + j;
            inverted ? acc.mul_fact(y) : acc.div_fact(y);
        }
}

}  // namespace detail

/// Closed form for tau((E_{j,j+1})^k) xi_M: sum over beta in N_0^j with
/// |beta| = k and M + Delta_j(beta) in G(lambda).
inline RepVector power_E_formula(const Weight& lambda, int j, long k, const GTPattern& m) {
    require_dominant(lambda, "power_E_formula");
    const int n = lambda.n();
    if (!(1 <= j && j <= n - 1)) throw Error(Errc::index_out_of_range, "power_E_formula: bad row");
    if (m.top() != lambda || !m.is_valid())
        throw Error(Errc::invalid_pattern, "power_E_formula: pattern not of type lambda");
    const auto& tab = pattern_table(lambda);

    RepVector out(lambda);
    std::vector<long> beta(static_cast<size_t>(j), 0);
    std::vector<long> mj(static_cast<size_t>(j)), mj1, mj0;
    for (int t = 1; t <= j; ++t) mj[static_cast<size_t>(t - 1)] = m.at(t, j);
    mj1.resize(static_cast<size_t>(j + 1));
    for (int t = 1; t <= j + 1; ++t) mj1[static_cast<size_t>(t - 1)] = m.at(t, j + 1);
    if (j >= 2) {
        mj0.resize(static_cast<size_t>(j - 1));
        for (int t = 1; t <= j - 1; ++t) mj0[static_cast<size_t>(t - 1)] = m.at(t, j - 1);
    }

    std::function<void(int, long)> rec = [&](int idx, long left) {
        if (idx == j) {
            if (left != 0) return;
            GTPattern dst = m;
            for (int t = 1; t <= j; ++t) dst.at(t, j) += beta[static_cast<size_t>(t - 1)];
            long to = tab.index_of(dst);
            if (to < 0 || !dst.is_valid()) return;

            std::vector<long> mb = mj;
            for (int t = 0; t < j; ++t) mb[static_cast<size_t>(t)] += beta[static_cast<size_t>(t)];

            detail::SProduct acc;
            detail::s_circ(acc, mb, mb, false);
            detail::s_circ(acc, mj, mj, false);
            detail::s_circ(acc, mb, mj, true);
            detail::s_circ(acc, mb, mj, true);
            if (j >= 2) {
                std::vector<long> lam_up = mj1;
                detail::s_plus(acc, lam_up, mj, false);
                // S+(m^{(j)}+beta, m^{(j-1)})
                std::vector<long> inner = mb;
                detail::s_plus(acc, inner, mj0, false);
                detail::s_plus(acc, lam_up, mb, true);
                detail::s_plus(acc, mj, mj0, true);
            } else {
                detail::s_plus(acc, mj1, mj, false);
                detail::s_plus(acc, mj1, mb, true);
            }
            if (acc.zero) return;
            Rat asq = acc.value * rat_factorial(k) * rat_factorial(k);
            Rat csq = asq * m.r() / dst.r();
            out.add(dst, detail::sqrt_or_die(csq, "power_E_formula"));
            return;
        }
        for (long b = 0; b <= left; ++b) {
            beta[static_cast<size_t>(idx)] = b;
            rec(idx + 1, left - b);
        }
    };
    if (k == 0) return RepVector::unit(lambda, m);
    rec(0, k);
    return out;
}

/// Prime test for the p-integrality scan.
inline bool is_prime(long p) {
    if (p < 2) return false;
    mpz_class z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

struct PIntegralReport {
    Weight lambda;
    long p = 0;
    long bound = 0;          // lambda_1 - lambda_n + n - 2
    bool above_bound = false;
    bool self_dual = false;  // every listed valuation is zero
    std::vector<std::pair<GTPattern, long>> r_valuations;
    // (i, j, from, to, valuation) for entries with nonzero valuation
    struct EntryVal {
        int i, j;
        GTPattern from, to;
        long val;
    };
    std::vector<EntryVal> entry_valuations;
    long min_entry_valuation = 0;
};

/// Scans v_p of all r(M) and of all entries of every matrix_E(lambda, i, j).
inline PIntegralReport p_integral_check(const Weight& lambda, long p) {
    require_dominant(lambda, "p_integral_check");
    if (!is_prime(p)) throw Error(Errc::not_prime, "p_integral_check: p is not prime");
    PIntegralReport rep;
    rep.lambda = lambda;
    rep.p = p;
    const int n = lambda.n();
    rep.bound = lambda[0] - lambda[n - 1] + n - 2;
    rep.above_bound = p > rep.bound;
    bool all_zero = true;
    const auto& tab = pattern_table(lambda);
    for (const auto& m : tab.patterns()) {
        long v = m.r().p_valuation(p);
        rep.r_valuations.emplace_back(m, v);
        if (v != 0) all_zero = false;
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const auto& mat = matrix_E(lambda, i, j);
            for (const auto& [from, row] : mat.entries)
                for (const auto& [to, c] : row) {
                    long v = c.p_valuation(p);
                    if (v != 0) {
                        rep.entry_valuations.push_back(
                            {i, j, tab.at(from), tab.at(to), v});
                        if (v < 0) all_zero = false;
                        rep.min_entry_valuation = std::min(rep.min_entry_valuation, v);
                    }
                }
        }
    rep.self_dual = all_zero;
    return rep;
}

}  // namespace gtzeta

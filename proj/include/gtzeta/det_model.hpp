#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <vector>

#include "gtzeta/error.hpp"
#include "gtzeta/molev.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rational.hpp"
#include "gtzeta/weight.hpp"

namespace gtzeta {

/// Monomial in the n^2 matrix variables z_{i,j}: flattened exponent matrix,
/// entry (i,j) at position (i-1)*n + (j-1).  Ordered graded-lexicographically.
struct Monomial {
    std::vector<int32_t> e;

    long degree() const { return std::accumulate(e.begin(), e.end(), 0L); }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        long da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
};

/// Element of the determinantal model: (det z)^{det_offset} times a polynomial
/// with exact rational coefficients.  The polynomial part never records det z.
class PolyVector {
public:
    int n = 0;
    long det_offset = 0;
    std::map<Monomial, Rat> terms;

    PolyVector() = default;
    explicit PolyVector(int size, long offset = 0) : n(size), det_offset(offset) {}

    static PolyVector scalar(int size, const Rat& c, long offset = 0) {
        PolyVector p(size, offset);
        if (!c.is_zero()) p.terms[Monomial{std::vector<int32_t>(static_cast<size_t>(size) * size, 0)}] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Monomial& m, const Rat& c) {
        if (c.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    PolyVector& operator+=(const PolyVector& o) {
        if (is_zero()) {
            *this = o;
            return *this;
        }
        if (o.is_zero()) return *this;
        if (n != o.n || det_offset != o.det_offset)
            throw Error(Errc::degree_mismatch, "PolyVector sum: incompatible det offsets");
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }

    PolyVector& operator*=(const Rat& c) {
        if (c.is_zero()) {
            terms.clear();
            return *this;
        }
        for (auto& [m, v] : terms) v *= c;
        return *this;
    }

    friend PolyVector operator*(const PolyVector& a, const PolyVector& b) {
        if (a.n != b.n) throw Error(Errc::length_mismatch, "PolyVector product: size mismatch");
        PolyVector out(a.n, a.det_offset + b.det_offset);
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                Monomial m = ma;
                for (size_t k = 0; k < m.e.size(); ++k) m.e[k] += mb.e[k];
                out.add_term(m, ca * cb);
            }
        return out;
    }

    friend bool operator==(const PolyVector& a, const PolyVector& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.n == b.n && a.det_offset == b.det_offset && a.terms == b.terms;
    }
    friend bool operator!=(const PolyVector& a, const PolyVector& b) { return !(a == b); }

    /// Column degrees plus det offset; the weight when homogeneous.
    std::optional<Weight> weight() const {
        std::optional<std::vector<long>> w;
        for (const auto& [m, c] : terms) {
            std::vector<long> cols(static_cast<size_t>(n), det_offset);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    cols[static_cast<size_t>(j)] += m.e[static_cast<size_t>(i * n + j)];
            if (!w)
                w = cols;
            else if (*w != cols)
                return std::nullopt;
        }
        if (!w) return std::nullopt;
        return Weight(*w);
    }
};

/// tau(E_{i,j}) as the right-derivation sum_a z_{a,i} d/dz_{a,j}, plus the
/// det-power contribution on the diagonal.
inline PolyVector det_applyE(int i, int j, const PolyVector& v) {
    const int n = v.n;
    if (!(1 <= i && i <= n && 1 <= j && j <= n))
        throw Error(Errc::index_out_of_range, "det_applyE: index out of range");
    PolyVector out(n, v.det_offset);
    for (const auto& [m, c] : v.terms) {
        for (int a = 1; a <= n; ++a) {
            int32_t ej = m.e[static_cast<size_t>((a - 1) * n + (j - 1))];
            if (ej == 0) continue;
            Monomial t = m;
            t.e[static_cast<size_t>((a - 1) * n + (j - 1))] -= 1;
            t.e[static_cast<size_t>((a - 1) * n + (i - 1))] += 1;
            out.add_term(t, c * Rat(ej));
        }
        if (i == j && v.det_offset != 0) out.add_term(m, c * Rat(v.det_offset));
    }
    return out;
}

/// Minor det_{{1..k}, J}(z) for a column set J (ascending), as a polynomial.
inline PolyVector det_minor(int n, const std::vector<int>& cols) {
    const int k = static_cast<int>(cols.size());
    PolyVector out(n, 0);
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (perm[static_cast<size_t>(a)] > perm[static_cast<size_t>(b)]) ++inversions;
        Monomial m{std::vector<int32_t>(static_cast<size_t>(n) * n, 0)};
        for (int r = 0; r < k; ++r) {
            int col = cols[static_cast<size_t>(perm[static_cast<size_t>(r)])];
            m.e[static_cast<size_t>(r * n + (col - 1))] += 1;
        }
        out.add_term(m, Rat(inversions % 2 == 0 ? 1 : -1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline PolyVector det_full(int n) {
    std::vector<int> cols(static_cast<size_t>(n));
    std::iota(cols.begin(), cols.end(), 1);
    return det_minor(n, cols);
}

/// Multiply the polynomial part by det(z)^p (p >= 0) without touching det_offset.
inline PolyVector times_det_power(const PolyVector& v, long p) {
    if (p < 0) throw Error(Errc::invalid_exponent, "times_det_power: negative power");
    PolyVector out = v;
    PolyVector d = det_full(v.n);
    for (long t = 0; t < p; ++t) {
        long off = out.det_offset;
        out = out * d;
        out.det_offset = off;
    }
    return out;
}

/// Exponent family l = (l_I)_I over nonempty column subsets, keyed by bitmask.
struct DetExponents {
    int n = 0;
    std::map<uint32_t, long> l;  // only nonzero exponents kept

    long at(uint32_t mask) const {
        auto it = l.find(mask);
        return it == l.end() ? 0 : it->second;
    }
};

inline std::vector<int> mask_to_cols(uint32_t mask) {
    std::vector<int> cols;
    for (int b = 0; b < 32; ++b)
        if (mask & (1U << b)) cols.push_back(b + 1);
    return cols;
}

/// Membership test for l in L(lambda), the exponent polytope of V_lambda.
inline void require_in_L(const Weight& lambda, const DetExponents& l) {
    const int n = lambda.n();
    if (l.n != n) throw Error(Errc::length_mismatch, "exponent family size mismatch");
    const uint32_t full = (n == 32) ? 0xffffffffU : ((1U << n) - 1);
    std::vector<long> colsum(static_cast<size_t>(n), 0);
    for (const auto& [mask, e] : l.l) {
        if (mask == 0 || mask > full)
            throw Error(Errc::invalid_exponent, "exponent on invalid column set");
        int k = __builtin_popcount(mask);
        if (mask == full) continue;
        if (e < 0) throw Error(Errc::invalid_exponent, "negative exponent on proper subset");
        colsum[static_cast<size_t>(k - 1)] += e;
    }
    if (l.at(full) != lambda[n - 1])
        throw Error(Errc::invalid_exponent, "full-set exponent must equal lambda_n");
    for (int k = 1; k <= n - 1; ++k)
        if (colsum[static_cast<size_t>(k - 1)] != lambda[k - 1] - lambda[k])
            throw Error(Errc::invalid_exponent, "column-sum condition violated at size " +
                                                    std::to_string(k));
}

/// f_l(z) = prod_I det_I(z)^{l_I}; proper subsets expanded, det_offset = lambda_n.
inline PolyVector generator_f(const Weight& lambda, const DetExponents& l) {
    require_dominant(lambda, "generator_f");
    require_in_L(lambda, l);
    const int n = lambda.n();
    const uint32_t full = (1U << n) - 1;
    PolyVector out = PolyVector::scalar(n, Rat(1), lambda[n - 1]);
    for (const auto& [mask, e] : l.l) {
        if (mask == full) continue;
        PolyVector minor = det_minor(n, mask_to_cols(mask));
        for (long t = 0; t < e; ++t) {
            long off = out.det_offset;
            out = out * minor;
            out.det_offset = off;
        }
    }
    return out;
}

/// h(lambda): the highest-weight exponent family, supported on prefixes {1..k}.
inline DetExponents h_of(const Weight& lambda) {
    require_dominant(lambda, "h_of");
    const int n = lambda.n();
    DetExponents l;
    l.n = n;
    for (int k = 1; k < n; ++k) {
        long e = lambda[k - 1] - lambda[k];
        if (e) l.l[(1U << k) - 1] = e;
    }
    if (lambda[n - 1]) l.l[(1U << n) - 1] = lambda[n - 1];
    return l;
}

/// h(gamma) for an extremal weight gamma: supported on the sets {s(1)..s(k)}
/// for a permutation s with s(lambda) = gamma.
inline DetExponents h_of_extremal(const Weight& lambda, const Weight& gamma) {
    require_dominant(lambda, "h_of_extremal");
    const int n = lambda.n();
    if (gamma.n() != n) throw Error(Errc::length_mismatch, "h_of_extremal: length mismatch");
    // position of lambda_i inside gamma, first unused match wins
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::vector<int> pos(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (!used[static_cast<size_t>(j)] && gamma[j] == lambda[i]) {
                used[static_cast<size_t>(j)] = true;
                pos[static_cast<size_t>(i)] = j + 1;
                break;
            }
        if (pos[static_cast<size_t>(i)] < 0)
            throw Error(Errc::invalid_extremal, "h_of_extremal: gamma is not a rearrangement");
    }
    DetExponents l;
    l.n = n;
    uint32_t mask = 0;
    for (int k = 1; k < n; ++k) {
        mask |= 1U << (pos[static_cast<size_t>(k - 1)] - 1);
        long e = lambda[k - 1] - lambda[k];
        if (e) l.l[mask] += e;
    }
    if (lambda[n - 1]) l.l[(1U << n) - 1] = lambda[n - 1];
    return l;
}

/// h(lambda, mu; m): exponents of the mixed highest vector xi_{H(lambda,mu;m)}.
inline DetExponents h_of_mixed(const Weight& lambda, const Weight& mu, int m) {
    require_dominant(lambda, "h_of_mixed");
    require_dominant(mu, "h_of_mixed");
    const int n = lambda.n();
    if (mu.n() != n - 1 || m < 1 || m > n)
        throw Error(Errc::length_mismatch, "h_of_mixed: bad arguments");
    if (!interlaces(lambda, mu))
        throw Error(Errc::interlacing_violation, "h_of_mixed: mu must interlace lambda");
    DetExponents l;
    l.n = n;
    auto add = [&](uint32_t mask, long e) {
        if (e) l.l[mask] += e;
    };
    for (int k = 1; k <= n - 1; ++k) {
        uint32_t prefix = (1U << k) - 1;
        if (k < m) {
            add((prefix >> 1) | (1U << (n - 1)), lambda[k - 1] - mu[k - 1]);  // {1..k-1, n}
            add(prefix, mu[k - 1] - lambda[k]);                               // {1..k}
        } else {
            add(prefix, lambda[k - 1] - lambda[k]);
        }
    }
    add((1U << n) - 1, lambda[n - 1]);
    return l;
}

/// h(lambda, mu) = h(lambda, mu; n), the branching highest vector.
inline DetExponents h_of_pair(const Weight& lambda, const Weight& mu) {
    return h_of_mixed(lambda, mu, lambda.n());
}

/// Group action R(g): substitution z -> z g, with (det g)^{det_offset} folded in.
inline PolyVector det_act_group(const std::vector<std::vector<Rat>>& g, const PolyVector& v) {
    const int n = v.n;
    if (static_cast<int>(g.size()) != n)
        throw Error(Errc::length_mismatch, "det_act_group: matrix size mismatch");

    // exact determinant by fraction-full elimination on a copy
    std::vector<std::vector<Rat>> a = g;
    Rat detg(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error(Errc::singular_matrix, "det_act_group: singular matrix");
        if (piv != c) {
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(c)]);
            detg = -detg;
        }
        detg *= a[static_cast<size_t>(c)][static_cast<size_t>(c)];
        for (int r = c + 1; r < n; ++r) {
            Rat f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                    a[static_cast<size_t>(c)][static_cast<size_t>(c)];
            for (int cc = c; cc < n; ++cc)
                a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
                    f * a[static_cast<size_t>(c)][static_cast<size_t>(cc)];
        }
    }

    // per-variable linear forms z_{a,b} -> sum_c g_{c,b} z_{a,c}
    PolyVector out(n, v.det_offset);
    const Rat detpow = detg.pow(v.det_offset);
    for (const auto& [m, c0] : v.terms) {
        PolyVector acc = PolyVector::scalar(n, c0 * detpow, v.det_offset);
        for (int a2 = 1; a2 <= n; ++a2)
            for (int b = 1; b <= n; ++b) {
                int32_t e = m.e[static_cast<size_t>((a2 - 1) * n + (b - 1))];
                for (int32_t t = 0; t < e; ++t) {
                    PolyVector lin(n, v.det_offset);
                    for (int cc = 1; cc <= n; ++cc) {
                        if (g[static_cast<size_t>(cc - 1)][static_cast<size_t>(b - 1)].is_zero())
                            continue;
                        Monomial mm{std::vector<int32_t>(static_cast<size_t>(n) * n, 0)};
                        mm.e[static_cast<size_t>((a2 - 1) * n + (cc - 1))] = 1;
                        lin.add_term(mm, g[static_cast<size_t>(cc - 1)][static_cast<size_t>(b - 1)]);
                    }
                    long off = acc.det_offset;
                    acc = acc * lin;
                    acc.det_offset = off;
                }
            }
        out += acc;
    }
    return out;
}

/// Module adapter: V_lambda in the determinantal realisation.
struct DetModule {
    using V = PolyVector;
    V applyE(int i, int j, const V& v) const { return det_applyE(i, j, v); }
};

/// xi_M as an explicit polynomial: r_1(M)^{-1} D^-_M f_{h(lambda)}, with
/// negative lambda_n handled through the recorded det power.
inline PolyVector xi_polynomial(const Weight& lambda, const GTPattern& m) {
    require_dominant(lambda, "xi_polynomial");
    if (m.top() != lambda || !m.is_valid())
        throw Error(Errc::invalid_pattern, "xi_polynomial: pattern not of type lambda");
    const long s = lambda[lambda.n() - 1];
    const Weight lam0 = lambda.shifted(-s);
    const GTPattern m0 = m.shifted(-s);
    DetModule mod;
    PolyVector v = generator_f(lam0, h_of(lam0));
    v = apply_Dminus(mod, m0, v);
    v *= m0.r1().inverse();
    v.det_offset += s;
    return v;
}

/// Exact coordinate solver against the xi basis of one V_lambda.
class XiBasis {
public:
    explicit XiBasis(const Weight& lambda)
        : lambda_(lambda), table_(pattern_table(lambda)) {
        for (const auto& m : table_.patterns()) xi_.push_back(xi_polynomial(lambda_, m));
        base_ = build_solver(xi_);
    }

    const Weight& lambda() const { return lambda_; }
    const PatternTable& patterns() const { return table_; }
    const PolyVector& xi(size_t k) const { return xi_[k]; }

    /// Coordinates of v in the xi basis; throws not_in_module if v lies outside.
    std::map<GTPattern, Rat> coords(const PolyVector& v) const {
        if (v.is_zero()) return {};
        if (v.n != lambda_.n())
            throw Error(Errc::length_mismatch, "coords_in_xi: wrong matrix size");
        const long base_off = lambda_[lambda_.n() - 1];
        const PolyVector* target = &v;
        PolyVector expanded;
        const Solver* solver = &base_;
        if (v.det_offset > base_off) {
            expanded = times_det_power(v, v.det_offset - base_off);
            expanded.det_offset = base_off;
            target = &expanded;
        } else if (v.det_offset < base_off) {
            solver = &solver_for_deficit(base_off - v.det_offset);
        }
        std::vector<Rat> x = solver->solve(*target);
        std::map<GTPattern, Rat> out;
        for (size_t k = 0; k < x.size(); ++k)
            if (!x[k].is_zero()) out[table_.at(k)] = x[k];
        return out;
    }

private:
    struct Solver {
        std::map<Monomial, size_t> rows;
        std::vector<std::vector<Rat>> cols;     // dense columns, one per pattern
        std::vector<size_t> pivot_rows;         // k selected rows
        std::vector<std::vector<Rat>> pivinv;   // inverse of the pivot submatrix

        std::vector<Rat> solve(const PolyVector& v) const {
            const size_t k = cols.size();
            std::vector<Rat> b(rows.size());
            for (const auto& [m, c] : v.terms) {
                auto it = rows.find(m);
                if (it == rows.end())
                    throw Error(Errc::not_in_module, "coords_in_xi: stray monomial");
                b[it->second] = c;
            }
            std::vector<Rat> x(k);
            for (size_t r = 0; r < k; ++r) {
                Rat acc(0);
                for (size_t c = 0; c < k; ++c) acc += pivinv[r][c] * b[pivot_rows[c]];
                x[r] = acc;
            }
            // residual must vanish on every monomial row
            for (size_t r = 0; r < rows.size(); ++r) {
                Rat acc(0);
                for (size_t c = 0; c < k; ++c)
                    if (!x[c].is_zero()) acc += cols[c][r] * x[c];
                if (acc != b[r])
                    throw Error(Errc::not_in_module, "coords_in_xi: vector outside the span");
            }
            return x;
        }
    };

    static Solver build_solver(const std::vector<PolyVector>& basis) {
        Solver s;
        for (const auto& p : basis)
            for (const auto& [m, c] : p.terms) s.rows.emplace(m, 0);
        size_t r = 0;
        for (auto& [m, idx] : s.rows) idx = r++;
        const size_t nrows = s.rows.size(), k = basis.size();
        s.cols.assign(k, std::vector<Rat>(nrows));
        for (size_t c = 0; c < k; ++c)
            for (const auto& [m, coef] : basis[c].terms) s.cols[c][s.rows.at(m)] = coef;

        // Gaussian elimination to find k independent rows, then invert that block.
        std::vector<std::vector<Rat>> work(nrows, std::vector<Rat>(k));
        for (size_t c = 0; c < k; ++c)
            for (size_t r2 = 0; r2 < nrows; ++r2) work[r2][c] = s.cols[c][r2];
        std::vector<size_t> order(nrows);
        std::iota(order.begin(), order.end(), 0);
        size_t lead = 0;
        for (size_t c = 0; c < k; ++c) {
            size_t piv = lead;
            while (piv < nrows && work[order[piv]][c].is_zero()) ++piv;
            if (piv == nrows)
                throw Error(Errc::internal_consistency, "xi basis is not linearly independent");
            std::swap(order[lead], order[piv]);
            s.pivot_rows.push_back(order[lead]);
            const Rat inv = work[order[lead]][c].inverse();
            for (size_t r2 = lead + 1; r2 < nrows; ++r2) {
                Rat f = work[order[r2]][c] * inv;
                if (f.is_zero()) continue;
                for (size_t cc = c; cc < k; ++cc)
                    work[order[r2]][cc] -= f * work[order[lead]][cc];
            }
            ++lead;
        }
        // invert the k x k pivot block
        std::vector<std::vector<Rat>> a(k, std::vector<Rat>(2 * k));
        for (size_t r2 = 0; r2 < k; ++r2) {
            for (size_t c = 0; c < k; ++c) a[r2][c] = s.cols[c][s.pivot_rows[r2]];
            a[r2][k + r2] = Rat(1);
        }
        for (size_t c = 0; c < k; ++c) {
            size_t piv = c;
            while (piv < k && a[piv][c].is_zero()) ++piv;
            if (piv == k) throw Error(Errc::internal_consistency, "pivot block singular");
            std::swap(a[piv], a[c]);
            const Rat inv = a[c][c].inverse();
            for (size_t cc = 0; cc < 2 * k; ++cc) a[c][cc] *= inv;
            for (size_t r2 = 0; r2 < k; ++r2) {
                if (r2 == c || a[r2][c].is_zero()) continue;
                Rat f = a[r2][c];
                for (size_t cc = 0; cc < 2 * k; ++cc) a[r2][cc] -= f * a[c][cc];
            }
        }
        s.pivinv.assign(k, std::vector<Rat>(k));
        for (size_t r2 = 0; r2 < k; ++r2)
            for (size_t c = 0; c < k; ++c) s.pivinv[r2][c] = a[r2][k + c];
        return s;
    }

    const Solver& solver_for_deficit(long p) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = deficit_.find(p);
        if (it == deficit_.end()) {
            std::vector<PolyVector> lifted;
            lifted.reserve(xi_.size());
            for (const auto& x : xi_) lifted.push_back(times_det_power(x, p));
            it = deficit_.emplace(p, build_solver(lifted)).first;
        }
        return it->second;
    }

    Weight lambda_;
    const PatternTable& table_;
    std::vector<PolyVector> xi_;
    Solver base_;
    mutable std::mutex mu_;
    mutable std::map<long, Solver> deficit_;
};

/// Process-wide xi-basis cache.
inline const XiBasis& xi_basis(const Weight& lambda) {
    static std::mutex mu;
    static std::map<Weight, std::unique_ptr<XiBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(lambda);
    if (it == cache.end()) it = cache.emplace(lambda, std::make_unique<XiBasis>(lambda)).first;
    return *it->second;
}

inline std::map<GTPattern, Rat> coords_in_xi(const Weight& lambda, const PolyVector& v) {
    return xi_basis(lambda).coords(v);
}

}  // namespace gtzeta

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtzeta/error.hpp"
#include "gtzeta/rational.hpp"
#include "gtzeta/weight.hpp"

namespace gtzeta {

/// Gel'fand--Tsetlin pattern: triangular integer array m_{i,j} (1 <= i <= j <= n),
/// stored row-major from the top row m^{(n)} down to m^{(1)}.
class GTPattern {
public:
    GTPattern() : n_(0) {}

    static GTPattern from_rows(const std::vector<std::vector<long>>& rows_top_down) {
        GTPattern m;
        m.n_ = static_cast<int>(rows_top_down.size());
        for (int r = 0; r < m.n_; ++r) {
            const auto& row = rows_top_down[static_cast<size_t>(r)];
            if (static_cast<int>(row.size()) != m.n_ - r)
                throw Error(Errc::invalid_pattern, "row lengths must decrease from n to 1");
            m.e_.insert(m.e_.end(), row.begin(), row.end());
        }
        m.require_valid();
        return m;
    }

    /// Unchecked assembly from flat top-down data; used on hot paths.
    static GTPattern from_flat(int n, std::vector<long> flat) {
        GTPattern m;
        m.n_ = n;
        m.e_ = std::move(flat);
        return m;
    }

    int n() const { return n_; }

    /// Entry m_{i,j}, 1-based as in the defining formulas.
    long at(int i, int j) const { return e_[idx(i, j)]; }
    long& at(int i, int j) { return e_[idx(i, j)]; }

    Weight row(int j) const {
        std::vector<long> r(static_cast<size_t>(j));
        for (int i = 1; i <= j; ++i) r[static_cast<size_t>(i - 1)] = at(i, j);
        return Weight(std::move(r));
    }

    Weight top() const { return row(n_); }

    bool is_valid() const {
        for (int j = 1; j <= n_; ++j)
            for (int i = 1; i < j; ++i)
                if (at(i, j) < at(i + 1, j)) return false;
        for (int j = 1; j < n_; ++j)
            for (int i = 1; i <= j; ++i)
                if (!(at(i, j + 1) >= at(i, j) && at(i, j) >= at(i + 1, j + 1))) return false;
        return true;
    }

    void require_valid() const {
        if (n_ <= 0 || !is_valid())
            throw Error(Errc::invalid_pattern, "not a Gel'fand-Tsetlin pattern: " + str());
    }

    /// gamma^M_j = sum_i m_{i,j} - sum_i m_{i,j-1}.
    Weight weight() const {
        std::vector<long> g(static_cast<size_t>(n_));
        long prev = 0;
        for (int j = 1; j <= n_; ++j) {
            long cur = 0;
            for (int i = 1; i <= j; ++i) cur += at(i, j);
            g[static_cast<size_t>(j - 1)] = cur - prev;
            prev = cur;
        }
        return Weight(std::move(g));
    }

    /// q(M) = sum of all entries strictly below the top row.
    long q() const {
        long s = 0;
        for (int j = 1; j < n_; ++j)
            for (int i = 1; i <= j; ++i) s += at(i, j);
        return s;
    }

    /// r(M), the rational normalisation attached to the pattern.
    Rat r() const {
        Rat acc(1);
        for (int k = 2; k <= n_; ++k)
            for (int j = 1; j < k; ++j)
                for (int i = 1; i <= j; ++i) {
                    acc *= rat_factorial(at(i, k) - at(j, k - 1) - i + j);
                    acc *= rat_factorial(at(i, k - 1) - at(j + 1, k) - i + j);
                    acc /= rat_factorial(at(i, k - 1) - at(j, k - 1) - i + j);
                    acc /= rat_factorial(at(i, k) - at(j + 1, k) - i + j);
                }
        return acc;
    }

    /// r1(M): normalisation of the lowering chain from the highest weight vector.
    Rat r1() const {
        Rat acc(1);
        for (int k = 2; k <= n_; ++k)
            for (int j = 1; j < k; ++j)
                for (int i = 1; i <= j; ++i) {
                    acc *= rat_factorial(at(i, k) - at(j + 1, k) - i + j);
                    acc /= rat_factorial(at(i, k - 1) - at(j + 1, k) - i + j);
                }
        return acc;
    }

    /// r2(M): normalisation of the raising chain back to the highest weight vector.
    Rat r2() const {
        Rat acc(1);
        for (int k = 2; k <= n_; ++k)
            for (int j = 1; j < k; ++j)
                for (int i = 1; i <= j; ++i) {
                    acc *= rat_factorial(at(i, k) - at(j, k - 1) - i + j);
                    acc /= rat_factorial(at(i, k) - at(j, k) - i + j);
                }
        return acc;
    }

    /// Dual array (M^vee)_{i,j} = -m_{j+1-i,j}.
    GTPattern dual() const {
        GTPattern m;
        m.n_ = n_;
        m.e_.resize(e_.size());
        for (int j = 1; j <= n_; ++j)
            for (int i = 1; i <= j; ++i) m.e_[idx(i, j)] = -at(j + 1 - i, j);
        return m;
    }

    /// M + l: add l to every entry.
    GTPattern shifted(long l) const {
        GTPattern m = *this;
        for (auto& x : m.e_) x += l;
        return m;
    }

    /// Sub-array of the bottom n-1 rows.
    GTPattern hat() const {
        if (n_ < 2) throw Error(Errc::invalid_pattern, "hat() requires n >= 2");
        GTPattern m;
        m.n_ = n_ - 1;
        m.e_.assign(e_.begin() + n_, e_.end());
        return m;
    }

    /// M[lambda]: stack a new top row lambda (must interlace the current top).
    GTPattern stacked(const Weight& lambda) const {
        if (lambda.n() != n_ + 1)
            throw Error(Errc::length_mismatch, "stacked: top row must have length n+1");
        if (!interlaces(lambda, top()))
            throw Error(Errc::interlacing_violation,
                        "stacked: " + lambda.str() + " does not interlace " + top().str());
        GTPattern m;
        m.n_ = n_ + 1;
        m.e_.reserve(e_.size() + static_cast<size_t>(n_) + 1);
        m.e_.insert(m.e_.end(), lambda.v.begin(), lambda.v.end());
        m.e_.insert(m.e_.end(), e_.begin(), e_.end());
        return m;
    }

    /// Lexicographic order: rows compared bottom-up, entries left-to-right.
    static bool lex_less(const GTPattern& a, const GTPattern& b) {
        for (int j = 1; j <= a.n_; ++j)
            for (int i = 1; i <= j; ++i) {
                long x = a.at(i, j), y = b.at(i, j);
                if (x != y) return x < y;
            }
        return false;
    }

    friend bool operator==(const GTPattern& a, const GTPattern& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator!=(const GTPattern& a, const GTPattern& b) { return !(a == b); }
    friend bool operator<(const GTPattern& a, const GTPattern& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return lex_less(a, b);
    }

    const std::vector<long>& flat() const { return e_; }

    std::string str() const {
        std::string s;
        size_t p = 0;
        for (int j = n_; j >= 1; --j) {
            if (j != n_) s += ';';
            for (int i = 0; i < j; ++i, ++p) {
                if (i) s += ',';
                s += std::to_string(e_[p]);
            }
        }
        return s;
    }

private:
    size_t idx(int i, int j) const {
        // row j sits after rows n, n-1, ..., j+1
        size_t off = static_cast<size_t>(n_) * (n_ + 1) / 2 - static_cast<size_t>(j) * (j + 1) / 2;
        return off + static_cast<size_t>(i - 1);
    }

    int n_;
    std::vector<long> e_;
};

struct GTPatternHash {
    size_t operator()(const GTPattern& m) const {
        size_t h = static_cast<size_t>(m.n());
        for (long x : m.flat()) h = hash_combine(h, std::hash<long>()(x));
        return h;
    }
};

/// H(lambda): the pattern whose rows are prefixes of lambda.
inline GTPattern highest_pattern(const Weight& lambda) {
    require_dominant(lambda, "highest_pattern");
    const int n = lambda.n();
    std::vector<long> flat;
    flat.reserve(static_cast<size_t>(n) * (n + 1) / 2);
    for (int j = n; j >= 1; --j)
        for (int i = 0; i < j; ++i) flat.push_back(lambda[i]);
    return GTPattern::from_flat(n, std::move(flat));
}

/// H(gamma): the unique pattern of type lambda with extremal weight gamma;
/// row j is the descending sort of (gamma_1, ..., gamma_j).
inline GTPattern extremal_pattern(const Weight& lambda, const Weight& gamma) {
    require_dominant(lambda, "extremal_pattern");
    if (gamma.n() != lambda.n())
        throw Error(Errc::length_mismatch, "extremal_pattern: length mismatch");
    std::vector<long> sorted = gamma.v;
    std::sort(sorted.begin(), sorted.end(), std::greater<long>());
    if (sorted != lambda.v)
        throw Error(Errc::invalid_extremal,
                    "extremal_pattern: " + gamma.str() + " is not a rearrangement of " + lambda.str());
    const int n = lambda.n();
    std::vector<long> flat;
    flat.reserve(static_cast<size_t>(n) * (n + 1) / 2);
    for (int j = n; j >= 1; --j) {
        std::vector<long> row(gamma.v.begin(), gamma.v.begin() + j);
        std::sort(row.begin(), row.end(), std::greater<long>());
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return GTPattern::from_flat(n, std::move(flat));
}

/// H(lambda, mu; m): rows j >= m copy lambda, rows j < m copy mu.
inline GTPattern mixed_highest_pattern(const Weight& lambda, const Weight& mu, int m) {
    require_dominant(lambda, "mixed_highest_pattern");
    require_dominant(mu, "mixed_highest_pattern");
    const int n = lambda.n();
    if (mu.n() != n - 1 || m < 1 || m > n)
        throw Error(Errc::length_mismatch, "mixed_highest_pattern: bad arguments");
    if (!interlaces(lambda, mu))
        throw Error(Errc::interlacing_violation, "mixed_highest_pattern: mu must interlace lambda");
    std::vector<long> flat;
    for (int j = n; j >= 1; --j)
        for (int i = 1; i <= j; ++i) flat.push_back(j >= m ? lambda[i - 1] : mu[i - 1]);
    return GTPattern::from_flat(n, std::move(flat));
}

/// All of G(lambda), sorted ascending in the bottom-up lexicographic order.
inline std::vector<GTPattern> enumerate_patterns(const Weight& lambda) {
    require_dominant(lambda, "enumerate_patterns");
    const int n = lambda.n();
    std::vector<GTPattern> out;
    std::vector<std::vector<long>> rows(static_cast<size_t>(n));
    rows[0] = lambda.v;

    // depth-first over rows n-1 .. 1; entry m_{i,j} ranges in [m_{i+1,j+1}, m_{i,j+1}]
    std::function<void(int)> dfs = [&](int depth) {
        if (depth == n) {
            std::vector<long> flat;
            flat.reserve(static_cast<size_t>(n) * (n + 1) / 2);
            for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
            out.push_back(GTPattern::from_flat(n, std::move(flat)));
            return;
        }
        const auto& above = rows[static_cast<size_t>(depth - 1)];
        const int len = n - depth;
        std::vector<long>& row = rows[static_cast<size_t>(depth)];
        row.assign(static_cast<size_t>(len), 0);
        std::function<void(int)> fill = [&](int i) {
            if (i == len) {
                dfs(depth + 1);
                return;
            }
            long hi = above[static_cast<size_t>(i)];
            long lo = above[static_cast<size_t>(i + 1)];
            for (long v = lo; v <= hi; ++v) {
                row[static_cast<size_t>(i)] = v;
                fill(i + 1);
            }
        };
        fill(0);
    };
    dfs(1);
    std::sort(out.begin(), out.end(), GTPattern::lex_less);
    return out;
}

/// Shared enumeration of G(lambda) with pattern -> index lookup.
class PatternTable {
public:
    explicit PatternTable(const Weight& lambda)
        : lambda_(lambda), patterns_(enumerate_patterns(lambda)) {
        for (size_t k = 0; k < patterns_.size(); ++k) index_[patterns_[k]] = k;
    }

    const Weight& lambda() const { return lambda_; }
    const std::vector<GTPattern>& patterns() const { return patterns_; }
    size_t size() const { return patterns_.size(); }
    const GTPattern& at(size_t k) const { return patterns_[k]; }

    long index_of(const GTPattern& m) const {
        auto it = index_.find(m);
        return it == index_.end() ? -1 : static_cast<long>(it->second);
    }

    bool contains(const GTPattern& m) const { return index_.count(m) > 0; }

private:
    Weight lambda_;
    std::vector<GTPattern> patterns_;
    std::unordered_map<GTPattern, size_t, GTPatternHash> index_;
};

/// Process-wide memoised pattern tables, keyed by lambda.
inline const PatternTable& pattern_table(const Weight& lambda) {
    static std::mutex mu;
    static std::map<Weight, std::unique_ptr<PatternTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(lambda);
    if (it == cache.end())
        it = cache.emplace(lambda, std::make_unique<PatternTable>(lambda)).first;
    return *it->second;
}

}  // namespace gtzeta

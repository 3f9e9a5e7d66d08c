#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtzeta/branch.hpp"
#include "gtzeta/error.hpp"
#include "gtzeta/pairing.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rational.hpp"
#include "gtzeta/wedge.hpp"
#include "gtzeta/weight.hpp"

namespace gtzeta {

/// Exact element of Q(i).
struct GaussianRational {
    Rat re, im;

    GaussianRational() = default;
    GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(long r) : re(r) {}

    static GaussianRational one() { return GaussianRational(Rat(1), Rat(0)); }

    /// i^e for any integer e.
    static GaussianRational i_power(long e) {
        long k = ((e % 4) + 4) % 4;
        switch (k) {
            case 0: return {Rat(1), Rat(0)};
            case 1: return {Rat(0), Rat(1)};
            case 2: return {Rat(-1), Rat(0)};
            default: return {Rat(0), Rat(-1)};
        }
    }

    /// (eps * i)^e with eps in {+1, -1}.
    static GaussianRational eps_i_power(int eps, long e) {
        GaussianRational z = i_power(e);
        if (eps < 0 && (e % 2 != 0)) z = z * GaussianRational(-1);
        return z;
    }

    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator*(const GaussianRational& a, const Rat& c) {
        return {a.re * c, a.im * c};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::string str() const {
        if (im.is_zero()) return re.str();
        if (re.is_zero()) return im.str() + "*i";
        return re.str() + (im.sign() > 0 ? "+" : "") + im.str() + "*i";
    }
};

/// Multiset of rational shifts a_k representing prod_k Gamma(s + a_k).
struct GammaProduct {
    std::map<Rat, int> shifts;

    void add(const Rat& a, int mult = 1) {
        shifts[a] += mult;
        if (shifts[a] == 0) shifts.erase(a);
    }

    friend GammaProduct operator*(const GammaProduct& a, const GammaProduct& b) {
        GammaProduct out = a;
        for (const auto& [s, m] : b.shifts) out.add(s, m);
        return out;
    }
    friend bool operator==(const GammaProduct& a, const GammaProduct& b) {
        return a.shifts == b.shifts;
    }

    std::vector<Rat> sorted_list() const {
        std::vector<Rat> out;
        for (const auto& [s, m] : shifts)
            for (int t = 0; t < m; ++t) out.push_back(s);
        return out;
    }
};

/// Exact value in Q * pi^k * sqrt(2)^{0|1}.
struct SymbolicValue {
    Rat rational{1};
    long pi_pow = 0;
    bool sqrt2 = false;

    friend SymbolicValue operator*(const SymbolicValue& a, const SymbolicValue& b) {
        SymbolicValue out;
        out.rational = a.rational * b.rational;
        out.pi_pow = a.pi_pow + b.pi_pow;
        out.sqrt2 = a.sqrt2 != b.sqrt2;
        if (a.sqrt2 && b.sqrt2) out.rational *= Rat(2);
        return out;
    }
    friend bool operator==(const SymbolicValue& a, const SymbolicValue& b) {
        return a.rational == b.rational && a.pi_pow == b.pi_pow && a.sqrt2 == b.sqrt2;
    }

    std::string str() const {
        std::string s = rational.str();
        if (sqrt2) s += "*sqrt(2)";
        if (pi_pow != 0) s += "*pi^" + std::to_string(pi_pow);
        return s;
    }
};

/// Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s) at a positive (half-)integer argument.
inline SymbolicValue eval_gamma_C(const Rat& arg) {
    if (arg.sign() <= 0)
        throw Error(Errc::invalid_exponent, "eval_gamma_C: argument must be positive");
    Rat twice = arg * Rat(2);
    if (!twice.is_integer())
        throw Error(Errc::invalid_exponent, "eval_gamma_C: argument must be a half-integer");
    SymbolicValue out;
    if (arg.is_integer()) {
        long k = arg.num().get_si();
        out.rational = Rat(2) * rat_factorial(k - 1) / Rat(2).pow(k);
        out.pi_pow = -k;
        out.sqrt2 = false;
    } else {
        long k = (twice.num().get_si() - 1) / 2;  // arg = k + 1/2
        out.rational = rat_factorial(2 * k) / (Rat(4).pow(k) * rat_factorial(k) * Rat(2).pow(k));
        out.pi_pow = -k;
        out.sqrt2 = true;
    }
    return out;
}

/// Gamma_n(nu; d) = prod_{i<j} Gamma(nu_i - nu_j + 1 + |d_i - d_j|/2).
inline GammaProduct gamma_n_factor(const std::vector<Rat>& nu, const std::vector<long>& d) {
    if (nu.size() != d.size())
        throw Error(Errc::length_mismatch, "gamma_n_factor: length mismatch");
    GammaProduct out;
    const size_t n = nu.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            long diff = d[i] > d[j] ? d[i] - d[j] : d[j] - d[i];
            out.add(nu[i] - nu[j] + Rat(1) + Rat(diff, 2));
        }
    return out;
}

/// Rankin-Selberg archimedean L-factor shifts:
/// L(s, pi_{d,nu} x pi_{d',nu'}) = prod_{i,j} Gamma(s + nu_i + nu'_j + |d_i + d'_j|/2).
inline GammaProduct l_factor_arch(const std::vector<long>& d, const std::vector<Rat>& nu,
                                  const std::vector<long>& dp, const std::vector<Rat>& nup) {
    if (d.size() != nu.size() || dp.size() != nup.size())
        throw Error(Errc::length_mismatch, "l_factor_arch: length mismatch");
    GammaProduct out;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = 0; j < dp.size(); ++j) {
            long sum = d[i] + dp[j];
            if (sum < 0) sum = -sum;
            out.add(nu[i] + nup[j] + Rat(sum, 2));
        }
    return out;
}

/// Per-place archimedean zeta constant
/// 2^{-n(n-1)} i^{-b_{n-1}} (eps i)^{b_n (w - w')} (-1)^{(m+1) b_n}.
inline GaussianRational archzeta_constant(int n, long w, long wp, long m, int eps) {
    const long bn = static_cast<long>(n) * (n - 1) / 2;
    const long bn1 = static_cast<long>(n - 1) * (n - 2) / 2;
    GaussianRational z = GaussianRational::i_power(-bn1);
    z = z * GaussianRational::eps_i_power(eps, bn * (w - wp));
    z = z * GaussianRational(parity_sign((m + 1) * bn));
    z = z * Rat(BigInt(1), BigInt(1) << static_cast<unsigned long>(n * (n - 1)));
    return z;
}

/// The D_F part of the global constant, with a square-root marker for
/// non-integral exponents (cannot occur for integral m since b_n m is integral).
struct DiscriminantPower {
    Rat value{1};
    bool has_sqrt = false;
    long radicand = 1;

    std::string str() const {
        return has_sqrt ? value.str() + "*sqrt(" + std::to_string(radicand) + ")" : value.str();
    }
};

struct GlobalConstant {
    DiscriminantPower d_part;
    GaussianRational place_part;  // per-place factor to the r-th power
};

/// Global constant modulo the central-character factor omega(delta)^{-1},
/// which has no finite description here and is excluded by contract.
inline GlobalConstant global_constant_C(int places, int n, long w, long wp, long m, int eps,
                                        long d_f) {
    if (places < 0 || d_f <= 0)
        throw Error(Errc::invalid_exponent, "global_constant_C: bad arguments");
    GlobalConstant out;
    // exponent n(n-1)m/2 in halves; n(n-1) is even, so it is always integral
    long twice_exp = static_cast<long>(n) * (n - 1) * m;
    long whole = twice_exp / 2;
    if (twice_exp % 2 != 0) {
        out.d_part.has_sqrt = true;
        out.d_part.radicand = d_f;
        whole = (twice_exp - 1) / 2;
    }
    out.d_part.value = Rat(d_f).pow(whole);
    GaussianRational per = archzeta_constant(n, w, wp, m, eps);
    GaussianRational acc = GaussianRational::one();
    for (int t = 0; t < places; ++t) acc = acc * per;
    out.place_part = acc;
    return out;
}

/// Root-of-unity prefactor of the normalised Whittaker function:
/// (-1)^{sum (i-1) d^dom_i} (eps i)^{sum (i-1) d_i}.
inline GaussianRational whittaker_prefactor(const std::vector<long>& d, int eps) {
    std::vector<long> dom = d;
    std::sort(dom.begin(), dom.end(), std::greater<long>());
    long e1 = 0, e2 = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        e1 += static_cast<long>(i) * dom[i];
        e2 += static_cast<long>(i) * d[i];
    }
    GaussianRational z = GaussianRational::eps_i_power(eps, e2);
    return z * GaussianRational(parity_sign(e1));
}

/// The coefficient table of the pre-cohomology class: c(M, N, P, Q) over
/// G(d) x G(2 rho_n) x G(lambda^vee) x G(lambda - w), with d = 2 lambda + 2 rho_n - w.
class PreClass {
public:
    PreClass(const Weight& lambda, long w)
        : lambda_(lambda),
          w_(w),
          d_(derived_d(lambda, w)),
          tab_d_(pattern_table(d_)),
          tab_n_(pattern_table(rho2(lambda.n()))),
          tab_p_(pattern_table(lambda.dual())),
          tab_q_(pattern_table(lambda.shifted(-w))) {
        build();
    }

    static Weight derived_d(const Weight& lambda, long w) {
        Weight two = lambda + lambda;
        return (two + rho2(lambda.n())).shifted(-w);
    }

    const Weight& lambda() const { return lambda_; }
    long w() const { return w_; }
    const Weight& d() const { return d_; }
    const PatternTable& tab_d() const { return tab_d_; }
    const PatternTable& tab_n() const { return tab_n_; }
    const PatternTable& tab_p() const { return tab_p_; }
    const PatternTable& tab_q() const { return tab_q_; }

    /// Sparse column over G(d) for a fixed (N, P, Q) index triple.
    using Column = std::map<size_t, Rat>;

    size_t key(size_t ni, size_t pi, size_t qi) const {
        return (ni * tab_p_.size() + pi) * tab_q_.size() + qi;
    }

    const std::map<size_t, Column>& columns() const { return cols_; }

    Rat coefficient(const GTPattern& m, const GTPattern& n, const GTPattern& p,
                    const GTPattern& q) const {
        long mi = tab_d_.index_of(m), ni = tab_n_.index_of(n), pi = tab_p_.index_of(p),
             qi = tab_q_.index_of(q);
        if (mi < 0 || ni < 0 || pi < 0 || qi < 0)
            throw Error(Errc::invalid_pattern, "pre_class: pattern outside its type");
        auto it = cols_.find(key(static_cast<size_t>(ni), static_cast<size_t>(pi),
                                 static_cast<size_t>(qi)));
        if (it == cols_.end()) return Rat(0);
        auto jt = it->second.find(static_cast<size_t>(mi));
        return jt == it->second.end() ? Rat(0) : jt->second;
    }

private:
    void build() {
        const Weight twoRho = rho2(lambda_.n());
        const Weight twoLvW = (lambda_.dual() + lambda_.dual()).shifted(w_);  // 2 lambda^vee + w
        const Weight lvw = lambda_.dual().shifted(w_);                        // lambda^vee + w
        const PatternTable& tab_t = pattern_table(twoLvW);
        const PatternTable& tab_qv = pattern_table(lvw);

        // inner Cartan expansions I(xi_T) in V_{lambda^vee} (x) V_{lambda^vee + w},
        // reorganised as T -> [(P, Q, c2)] with Q = (Q^vee)^vee in G(lambda - w)
        std::vector<std::vector<std::tuple<size_t, size_t, Rat>>> inner(tab_t.size());
        for (size_t ti = 0; ti < tab_t.size(); ++ti) {
            const TensorVector& exp2 = detail::cartan_table(lambda_.dual(), lvw)
                                           .expansion(tab_t.at(ti));
            for (const auto& [pq, c2] : exp2.coords) {
                long pi = tab_p_.index_of(pq.first);
                long qvi = tab_qv.index_of(pq.second);
                if (pi < 0 || qvi < 0)
                    throw Error(Errc::internal_consistency, "pre_class: inner expansion stray");
                long qi = tab_q_.index_of(pq.second.dual());
                if (qi < 0)
                    throw Error(Errc::internal_consistency, "pre_class: dual pattern stray");
                inner[ti].emplace_back(static_cast<size_t>(pi), static_cast<size_t>(qi), c2);
            }
        }

        std::vector<Rat> q_sign(tab_q_.size());
        for (size_t qi = 0; qi < tab_q_.size(); ++qi)
            q_sign[qi] = Rat(parity_sign(tab_q_.at(qi).q()));

        for (size_t mi = 0; mi < tab_d_.size(); ++mi) {
            const GTPattern& m = tab_d_.at(mi);
            const Rat front = Rat(parity_sign(m.q())) / m.r();
            const TensorVector& exp1 =
                detail::cartan_table(twoRho, twoLvW).expansion(m.dual());
            for (const auto& [nt, c1] : exp1.coords) {
                long ni = tab_n_.index_of(nt.first);
                long ti = tab_t.index_of(nt.second);
                if (ni < 0 || ti < 0)
                    throw Error(Errc::internal_consistency, "pre_class: outer expansion stray");
                const Rat fc1 = front * c1;
                for (const auto& [pi, qi, c2] : inner[static_cast<size_t>(ti)]) {
                    Rat val = fc1 * c2 * q_sign[qi];
                    if (val.is_zero()) continue;
                    auto& col = cols_[key(static_cast<size_t>(ni), pi, qi)];
                    auto it = col.find(mi);
                    if (it == col.end()) {
                        col.emplace(mi, val);
                    } else {
                        it->second += val;
                        if (it->second.is_zero()) col.erase(it);
                    }
                }
            }
        }
        // drop empty columns
        for (auto it = cols_.begin(); it != cols_.end();)
            it = it->second.empty() ? cols_.erase(it) : std::next(it);
    }

    Weight lambda_;
    long w_;
    Weight d_;
    const PatternTable& tab_d_;
    const PatternTable& tab_n_;
    const PatternTable& tab_p_;
    const PatternTable& tab_q_;
    std::map<size_t, Column> cols_;
};

/// Process-wide cache of pre-class tables, keyed by (lambda, w).
inline const PreClass& pre_class(const Weight& lambda, long w) {
    require_dominant(lambda, "pre_class");
    static std::mutex mu;
    static std::map<std::pair<Weight, long>, std::unique_ptr<PreClass>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(lambda, w);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PreClass>(lambda, w)).first;
    return *it->second;
}

namespace detail {

/// s_n(I^{p_n}(xi_N), I^{p_{n-1}}(xi_{N'})) over G(2 rho_n) x G(2 rho_{n-1}),
/// memoised per n.
inline const std::vector<std::vector<Rat>>& wedge_pair_table(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<std::vector<std::vector<Rat>>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        const auto& tn = pattern_table(rho2(n));
        const auto& tm = pattern_table(rho2(n - 1));
        auto tab = std::make_unique<std::vector<std::vector<Rat>>>(
            tn.size(), std::vector<Rat>(tm.size()));
        for (size_t a = 0; a < tn.size(); ++a) {
            WedgeElement wa = inject_2rho(n, RepVector::unit(rho2(n), tn.at(a)));
            for (size_t b = 0; b < tm.size(); ++b) {
                WedgeElement wb = inject_2rho(n - 1, RepVector::unit(rho2(n - 1), tm.at(b)));
                (*tab)[a][b] = s_pairing(wa, wb);
            }
        }
        it = cache.emplace(n, std::move(tab)).first;
    }
    return *it->second;
}

}  // namespace detail

/// Psi^{(m)}([pi]^pre (x) [pi']^pre): the wedge pairing contracted first, then
/// the two twisted GT pairings, leaving an element of V_d (x) V_{d'}.
inline TensorVector psi_pairing(const Weight& lambda, long w, const Weight& mu, long wp,
                                long m) {
    require_dominant(lambda, "psi_pairing");
    require_dominant(mu, "psi_pairing");
    const int n = lambda.n();
    if (mu.n() != n - 1) throw Error(Errc::length_mismatch, "psi_pairing: need ranks n, n-1");
    if (!interlaces(lambda.dual(), mu.shifted(m)))
        throw Error(Errc::not_critical, "psi_pairing: lambda^vee >= mu + m fails");
    if (!interlaces(lambda.shifted(-w), mu.dual().shifted(wp + m)))
        throw Error(Errc::not_critical, "psi_pairing: lambda - w >= mu^vee + w' + m fails");

    const PreClass& side1 = pre_class(lambda, w);
    const PreClass& side2 = pre_class(mu, wp);
    const auto& stab = detail::wedge_pair_table(n);

    const PatternTable& tp2 = side2.tab_p();  // G(mu^vee)
    const PatternTable& tq2 = side2.tab_q();  // G(mu - w')

    TensorVector out(side1.d(), side2.d());
    for (const auto& [k1, col1] : side1.columns()) {
        size_t qi = k1 % side1.tab_q().size();
        size_t pi = (k1 / side1.tab_q().size()) % side1.tab_p().size();
        size_t ni = k1 / (side1.tab_q().size() * side1.tab_p().size());

        const GTPattern& p = side1.tab_p().at(pi);
        const GTPattern& q = side1.tab_q().at(qi);

        // <xi_P, xi_P'> != 0 forces P' = (P-hat - m)^vee in G(mu^vee)
        long ppi = tp2.index_of(p.hat().shifted(-m).dual());
        if (ppi < 0) continue;
        long qqi = tq2.index_of(q.hat().shifted(-m).dual());
        if (qqi < 0) continue;
        const Rat pairs = Rat(parity_sign(p.q() + q.q())) * p.r() * q.r();

        for (size_t nni = 0; nni < side2.tab_n().size(); ++nni) {
            const Rat& s = stab[ni][nni];
            if (s.is_zero()) continue;
            auto it2 = side2.columns().find(
                side2.key(nni, static_cast<size_t>(ppi), static_cast<size_t>(qqi)));
            if (it2 == side2.columns().end()) continue;
            const Rat scale = s * pairs;
            for (const auto& [mi, c1] : col1)
                for (const auto& [mpi, c2] : it2->second)
                    out.add(side1.tab_d().at(mi), side2.tab_d().at(mpi), scale * c1 * c2);
        }
    }
    return out;
}

/// The invariant reference element sum_M (-1)^{q(M)}/r(M) xi_{M[d]} (x) xi_{M^vee}
/// of V_d (x) V_{d'}.
inline TensorVector psi_reference(const Weight& lambda, long w, const Weight& mu, long wp) {
    const Weight d = PreClass::derived_d(lambda, w);
    const Weight dp = PreClass::derived_d(mu, wp);
    TensorVector out(d, dp);
    for (const auto& m : pattern_table(dp.dual()).patterns())
        out.add(m.stacked(d), m.dual(), Rat(parity_sign(m.q())) / m.r());
    return out;
}

/// c^{(m)}: the proportionality scalar between Psi^{(m)} and the reference
/// element; asserts exact proportionality coordinate by coordinate.
inline Rat extract_cm(const Weight& lambda, long w, const Weight& mu, long wp, long m) {
    TensorVector psi = psi_pairing(lambda, w, mu, wp, m);
    TensorVector ref = psi_reference(lambda, w, mu, wp);
    if (psi.is_zero()) return Rat(0);
    // scalar from the first reference coordinate, then exact equality
    const auto& [key0, c0] = *ref.coords.begin();
    Rat c = psi.at(key0.first, key0.second) / c0;
    TensorVector scaled = ref;
    scaled *= c;
    if (scaled != psi)
        throw Error(Errc::internal_consistency,
                    "extract_cm: pairing is not proportional to the invariant element");
    return c;
}

/// Closed form of Prop. coefC-type: (-1)^{(n-1) w' + (m+1) b_n + l(mu)}.
inline Rat cm_closed_form(int n, long wp, const Weight& mu, long m) {
    const long bn = static_cast<long>(n) * (n - 1) / 2;
    return Rat(parity_sign((n - 1) * wp + (m + 1) * bn + mu.sum()));
}

/// The intermediate identity route: sign times the wedge-chain s-value divided
/// by r(H(2 rho_{n-1})[2 rho_n]).
inline Rat clem1_value(int n, long wp, const Weight& mu, long m) {
    const long bn = static_cast<long>(n) * (n - 1) / 2;
    const Weight lamN = rho2(n), lamM = rho2(n - 1);
    const GTPattern stacked = highest_pattern(lamM).stacked(lamN);
    Weight lowest{std::vector<long>(lamM.v.rbegin(), lamM.v.rend())};
    Rat s = s_pairing(inject_2rho(n, RepVector::unit(lamN, stacked)),
                      inject_2rho(n - 1, RepVector::unit(lamM, extremal_pattern(lamM, lowest))));
    long e = (n - 1) * wp + m * bn + mu.sum() +
             static_cast<long>(n) * (n - 1) * (n - 2) / 6;
    return Rat(parity_sign(e)) * s / stacked.r();
}

}  // namespace gtzeta

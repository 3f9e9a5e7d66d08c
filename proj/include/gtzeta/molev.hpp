#pragma once

#include <vector>

#include "gtzeta/error.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rational.hpp"

namespace gtzeta {

// Raising/lowering operators of the enveloping algebra, applied generically to
// any module that exposes the elementary actions.  A Module provides
//     using V = ...;                      // vector type: zero-constructible,
//                                         // V += V, V *= Rat
//     V applyE(int i, int j, const V&);   // action of E_{i,j}, 1-based
// Operator products act right factor first throughout.

template <class Module>
typename Module::V apply_cartan_factor(const Module& mod, int i, int k,
                                       const typename Module::V& v) {
    // E_{i,i} - E_{k,k} - i + k
    typename Module::V out = mod.applyE(i, i, v);
    typename Module::V t = mod.applyE(k, k, v);
    t *= Rat(-1);
    out += t;
    typename Module::V s = v;
    s *= Rat(k - i);
    out += s;
    return out;
}

/// Raising operator D_{i,j} (i < j): signed sum over descending chains
/// i = i_0 > i_1 > ... > i_h >= 1 with Cartan factors over the skipped indices.
template <class Module>
typename Module::V apply_raising_D(const Module& mod, int i, int j,
                                   const typename Module::V& v) {
    if (!(1 <= i && i < j)) throw Error(Errc::index_out_of_range, "apply_raising_D: need i < j");
    typename Module::V total{};
    const int nsub = i - 1;
    for (unsigned long s = 0; s < (1UL << nsub); ++s) {
        typename Module::V cur = v;
        std::vector<int> chain;
        for (int k = i - 1; k >= 1; --k)
            if (s & (1UL << (k - 1))) chain.push_back(k);  // descending
        for (int k = 1; k <= i - 1; ++k)
            if (!(s & (1UL << (k - 1)))) cur = apply_cartan_factor(mod, i, k, cur);
        int last = chain.empty() ? i : chain.back();
        cur = mod.applyE(last, j, cur);
        for (size_t t = chain.size(); t-- > 0;) {
            int from = (t == 0) ? i : chain[t - 1];
            cur = mod.applyE(from, chain[t], cur);
        }
        total += cur;
    }
    total *= Rat(parity_sign(i - 1));
    return total;
}

/// Lowering operator D_{j,i} (i < j): sum over ascending chains
/// i = i_0 < i_1 < ... < i_h < j with Cartan factors over the skipped indices.
template <class Module>
typename Module::V apply_lowering_D(const Module& mod, int j, int i,
                                    const typename Module::V& v) {
    if (!(1 <= i && i < j)) throw Error(Errc::index_out_of_range, "apply_lowering_D: need i < j");
    typename Module::V total{};
    const int lo = i + 1, hi = j - 1;
    const int nsub = hi - lo + 1;
    for (unsigned long s = 0; s < (1UL << nsub); ++s) {
        typename Module::V cur = v;
        std::vector<int> chain;
        for (int k = lo; k <= hi; ++k)
            if (s & (1UL << (k - lo))) chain.push_back(k);  // ascending
        for (int k = lo; k <= hi; ++k)
            if (!(s & (1UL << (k - lo)))) cur = apply_cartan_factor(mod, i, k, cur);
        int last = chain.empty() ? i : chain.back();
        cur = mod.applyE(j, last, cur);
        for (size_t t = chain.size(); t-- > 0;) {
            int to = (t == 0) ? i : chain[t - 1];
            cur = mod.applyE(chain[t], to, cur);
        }
        total += cur;
    }
    return total;
}

/// D^-_M = D^-_{M,2} D^-_{M,3} ... D^-_{M,n},
/// D^-_{M,k} = D_{k,1}^{m_{1,k}-m_{1,k-1}} ... D_{k,k-1}^{m_{k-1,k}-m_{k-1,k-1}}.
template <class Module>
typename Module::V apply_Dminus(const Module& mod, const GTPattern& m,
                                typename Module::V v) {
    const int n = m.n();
    for (int k = n; k >= 2; --k)
        for (int i = k - 1; i >= 1; --i) {
            long e = m.at(i, k) - m.at(i, k - 1);
            for (long t = 0; t < e; ++t) v = apply_lowering_D(mod, k, i, v);
        }
    return v;
}

/// D^+_M = D^+_{M,n} D^+_{M,n-1} ... D^+_{M,2},
/// D^+_{M,k} = D_{1,k}^{m_{1,k}-m_{1,k-1}} ... D_{k-1,k}^{m_{k-1,k}-m_{k-1,k-1}}.
template <class Module>
typename Module::V apply_Dplus(const Module& mod, const GTPattern& m,
                               typename Module::V v) {
    const int n = m.n();
    for (int k = 2; k <= n; ++k)
        for (int i = k - 1; i >= 1; --i) {
            long e = m.at(i, k) - m.at(i, k - 1);
            for (long t = 0; t < e; ++t) v = apply_raising_D(mod, i, k, v);
        }
    return v;
}

}  // namespace gtzeta

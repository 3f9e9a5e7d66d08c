#pragma once

#include "gtzeta/branch.hpp"
#include "gtzeta/error.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rep_vector.hpp"

namespace gtzeta {

/// <xi_M, xi_N>_lambda = (-1)^{q(M)} r(M) when M = N^vee, else 0.
inline Rat pair_lambda(const Weight& lambda, const RepVector& v, const RepVector& w) {
    if (!v.is_zero() && v.lambda != lambda)
        throw Error(Errc::weight_mismatch, "pair_lambda: first leg not of type lambda");
    if (!w.is_zero() && w.lambda != lambda.dual())
        throw Error(Errc::weight_mismatch, "pair_lambda: second leg not of type lambda^vee");
    Rat acc(0);
    for (const auto& [m, c] : v.coords) {
        Rat cw = w.at(m.dual());
        if (cw.is_zero()) continue;
        acc += Rat(parity_sign(m.q())) * m.r() * c * cw;
    }
    return acc;
}

/// Twisted GL_{n-1} pairing <xi_M, xi_N>^{(l)}_{lambda,mu}: nonzero exactly
/// when M-hat = N^vee + l.
inline Rat pair_lambda_mu(const Weight& lambda, const Weight& mu, long l, const RepVector& v,
                          const RepVector& w) {
    if (mu.n() != lambda.n() - 1)
        throw Error(Errc::length_mismatch, "pair_lambda_mu: need ranks n and n-1");
    if (!interlaces(lambda.dual(), mu.shifted(-l)))
        throw Error(Errc::interlacing_violation,
                    "pair_lambda_mu: mu - l must interlace lambda^vee");
    if (!v.is_zero() && v.lambda != lambda)
        throw Error(Errc::weight_mismatch, "pair_lambda_mu: first leg not of type lambda");
    if (!w.is_zero() && w.lambda != mu)
        throw Error(Errc::weight_mismatch, "pair_lambda_mu: second leg not of type mu");
    const auto& tabmu = pattern_table(mu);
    Rat acc(0);
    for (const auto& [m, c] : v.coords) {
        GTPattern nu = m.hat().shifted(-l).dual();  // N with N^vee + l = M-hat
        if (!tabmu.contains(nu)) continue;
        Rat cw = w.at(nu);
        if (cw.is_zero()) continue;
        acc += Rat(parity_sign(m.q())) * m.r() * c * cw;
    }
    return acc;
}

/// I^conj_lambda: xi_M -> (-1)^{q(M)} xi_{M^vee}, V_lambda -> V_{lambda^vee}.
inline RepVector conj_map(const Weight& lambda, const RepVector& v) {
    if (!v.is_zero() && v.lambda != lambda)
        throw Error(Errc::weight_mismatch, "conj_map: vector not of type lambda");
    RepVector out(lambda.dual());
    for (const auto& [m, c] : v.coords) out.add(m.dual(), c * Rat(parity_sign(m.q())));
    return out;
}

/// I^det_{lambda,l}: xi_M -> xi_{M-l}, V_lambda -> V_{lambda-l}.
inline RepVector det_shift(const Weight& lambda, long l, const RepVector& v) {
    if (!v.is_zero() && v.lambda != lambda)
        throw Error(Errc::weight_mismatch, "det_shift: vector not of type lambda");
    RepVector out(lambda.shifted(-l));
    for (const auto& [m, c] : v.coords) out.add(m.shifted(-l), c);
    return out;
}

/// [id_{V_d}] = sum_M (-1)^{q(M)} / r(M) xi_M (x) xi_{M^vee}.
inline TensorVector id_element(const Weight& d) {
    require_dominant(d, "id_element");
    TensorVector out(d, d.dual());
    for (const auto& m : pattern_table(d).patterns())
        out.add(m, m.dual(), Rat(parity_sign(m.q())) / m.r());
    return out;
}

}  // namespace gtzeta

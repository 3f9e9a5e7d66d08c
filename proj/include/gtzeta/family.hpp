#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtzeta/error.hpp"
#include "gtzeta/weight.hpp"

namespace gtzeta {

/// A family of dominant weights indexed by complex embeddings, with the
/// conjugation involution sigma <-> bar-sigma stored as an index pairing.
/// Labels come in fixed-point-free pairs (totally imaginary base field).
struct EmbeddingWeightFamily {
    std::vector<std::string> labels;
    std::vector<Weight> weights;
    std::vector<int> conjugate;  // conjugate[i] = index of bar(labels[i]), != i

    size_t size() const { return labels.size(); }

    void validate() const {
        if (labels.size() != weights.size() || labels.size() != conjugate.size())
            throw Error(Errc::label_mismatch, "family: inconsistent sizes");
        for (size_t i = 0; i < conjugate.size(); ++i) {
            size_t j = static_cast<size_t>(conjugate[i]);
            if (j >= conjugate.size() || j == i || conjugate[j] != static_cast<int>(i))
                throw Error(Errc::label_mismatch, "family: involution must be fixed-point-free");
        }
        for (const auto& w : weights) require_dominant(w, "family");
    }

    /// Builds a family of r conjugate pairs from per-place weight pairs
    /// (lambda_sigma, lambda_sigma-bar).
    static EmbeddingWeightFamily from_places(
        const std::vector<std::pair<Weight, Weight>>& places) {
        EmbeddingWeightFamily f;
        for (size_t k = 0; k < places.size(); ++k) {
            f.labels.push_back("v" + std::to_string(k));
            f.labels.push_back("v" + std::to_string(k) + "bar");
            f.weights.push_back(places[k].first);
            f.weights.push_back(places[k].second);
            f.conjugate.push_back(static_cast<int>(2 * k + 1));
            f.conjugate.push_back(static_cast<int>(2 * k));
        }
        f.validate();
        return f;
    }
};

/// The purity weight: the unique w with lambda_sigma - lambda_{bar sigma}^vee
/// = (w, ..., w) for all sigma, or nullopt if the family is impure.
inline std::optional<long> purity_weight(const EmbeddingWeightFamily& fam) {
    fam.validate();
    std::optional<long> w;
    for (size_t i = 0; i < fam.size(); ++i) {
        const Weight diff = fam.weights[i] - fam.weights[static_cast<size_t>(fam.conjugate[i])].dual();
        for (int k = 0; k < diff.n(); ++k) {
            if (!w) w = diff[k];
            if (diff[k] != *w) return std::nullopt;
        }
    }
    return w;
}

/// All integers m with lambda_sigma^vee >= mu_sigma + m at every label;
/// a (possibly empty) contiguous interval.
inline std::optional<std::pair<long, long>> critical_points(
    const EmbeddingWeightFamily& lam, const EmbeddingWeightFamily& mu) {
    lam.validate();
    mu.validate();
    if (lam.labels != mu.labels)
        throw Error(Errc::label_mismatch, "critical_points: families over different label sets");
    bool any = false;
    long lo = 0, hi = 0;
    for (size_t s = 0; s < lam.size(); ++s) {
        const Weight lv = lam.weights[s].dual();
        const Weight& m = mu.weights[s];
        if (m.n() != lv.n() - 1)
            throw Error(Errc::length_mismatch, "critical_points: need GL_n and GL_{n-1} families");
        // lv_i >= mu_i + m >= lv_{i+1}  for every i
        long slo = lv[1] - m[0], shi = lv[0] - m[0];
        for (int i = 0; i < m.n(); ++i) {
            slo = std::max(slo, lv[i + 1] - m[i]);
            shi = std::min(shi, lv[i] - m[i]);
        }
        if (!any) {
            lo = slo;
            hi = shi;
            any = true;
        } else {
            lo = std::max(lo, slo);
            hi = std::min(hi, shi);
        }
    }
    if (!any || lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

}  // namespace gtzeta

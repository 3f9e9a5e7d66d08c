#pragma once

#include <map>

#include "gtzeta/error.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rational.hpp"
#include "gtzeta/weight.hpp"

namespace gtzeta {

/// Finitely supported vector in V_lambda, coordinates in the xi basis.
struct RepVector {
    Weight lambda;
    std::map<GTPattern, Rat> coords;

    RepVector() = default;
    explicit RepVector(Weight lam) : lambda(std::move(lam)) {}

    static RepVector unit(const Weight& lam, const GTPattern& m) {
        RepVector v(lam);
        v.coords[m] = Rat(1);
        return v;
    }

    bool is_zero() const { return coords.empty(); }

    void add(const GTPattern& m, const Rat& c) {
        if (c.is_zero()) return;
        auto it = coords.find(m);
        if (it == coords.end()) {
            coords.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coords.erase(it);
        }
    }

    Rat at(const GTPattern& m) const {
        auto it = coords.find(m);
        return it == coords.end() ? Rat(0) : it->second;
    }

    RepVector& operator+=(const RepVector& o) {
        if (is_zero() && lambda.n() == 0) lambda = o.lambda;
        for (const auto& [m, c] : o.coords) add(m, c);
        return *this;
    }

    RepVector& operator*=(const Rat& c) {
        if (c.is_zero()) {
            coords.clear();
            return *this;
        }
        for (auto& [m, v] : coords) v *= c;
        return *this;
    }

    friend RepVector operator*(RepVector v, const Rat& c) { return v *= c; }
    friend RepVector operator+(RepVector a, const RepVector& b) { return a += b; }

    friend bool operator==(const RepVector& a, const RepVector& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.lambda == b.lambda && a.coords == b.coords;
    }
    friend bool operator!=(const RepVector& a, const RepVector& b) { return !(a == b); }
};

}  // namespace gtzeta

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "gtzeta/action.hpp"
#include "gtzeta/branch.hpp"
#include "gtzeta/det_model.hpp"
#include "gtzeta/error.hpp"
#include "gtzeta/pattern.hpp"
#include "gtzeta/rational.hpp"
#include "gtzeta/rep_vector.hpp"
#include "gtzeta/wedge.hpp"
#include "gtzeta/weight.hpp"

namespace gtzeta {

using json = nlohmann::json;

inline json weight_json(const Weight& w) {
    json a = json::array();
    for (long x : w.v) a.push_back(x);
    return a;
}

/// Patterns serialise as arrays of rows, top row first.
inline json pattern_json(const GTPattern& m) {
    json a = json::array();
    for (int j = m.n(); j >= 1; --j) {
        json row = json::array();
        for (int i = 1; i <= j; ++i) row.push_back(m.at(i, j));
        a.push_back(row);
    }
    return a;
}

inline Weight weight_from_json(const json& a) {
    if (!a.is_array()) throw Error(Errc::invalid_weight, "weight must be an integer array");
    std::vector<long> v;
    for (const auto& x : a) {
        if (!x.is_number_integer()) throw Error(Errc::invalid_weight, "weight entries must be integers");
        v.push_back(x.get<long>());
    }
    return Weight(std::move(v));
}

inline Weight parse_weight(const std::string& s) {
    std::vector<long> v;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            size_t used = 0;
            long x = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            v.push_back(x);
        } catch (const std::exception&) {
            throw Error(Errc::invalid_weight, "malformed weight entry: '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (v.empty()) throw Error(Errc::invalid_weight, "empty weight");
    return Weight(std::move(v));
}

inline std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> v;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            v.push_back(Rat::parse(tok));
        } catch (const std::exception&) {
            throw Error(Errc::invalid_weight, "malformed rational entry: '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return v;
}

/// Sparse triplet serialisation of an action matrix.
inline json action_matrix_json(const ActionMatrix& mat) {
    const auto& tab = mat.table();
    json entries = json::array();
    for (const auto& [from, row] : mat.entries)
        for (const auto& [to, c] : row)
            entries.push_back(
                {{"from", pattern_json(tab.at(from))}, {"to", pattern_json(tab.at(to))},
                 {"coeff", c.str()}});
    return {{"lambda", weight_json(mat.lambda)}, {"i", mat.i}, {"j", mat.j},
            {"entries", entries}};
}

inline json tensor_vector_json(const TensorVector& t) {
    json terms = json::array();
    for (const auto& [key, c] : t.coords)
        terms.push_back({{"M", pattern_json(key.first)}, {"Mp", pattern_json(key.second)},
                         {"coeff", c.str()}});
    return terms;
}

/// {det_offset, terms: [{exponents: n x n integer matrix, coeff: "p/q"}]}.
inline json poly_vector_json(const PolyVector& v) {
    json terms = json::array();
    for (const auto& [m, c] : v.terms) {
        json rows = json::array();
        for (int a = 0; a < v.n; ++a) {
            json row = json::array();
            for (int b = 0; b < v.n; ++b) row.push_back(m.e[static_cast<size_t>(a * v.n + b)]);
            rows.push_back(row);
        }
        terms.push_back({{"exponents", rows}, {"coeff", c.str()}});
    }
    return {{"det_offset", v.det_offset}, {"terms", terms}};
}

/// [{indices: [[i,j], ...] sorted, coeff: "p/q"}].
inline json wedge_element_json(const WedgeElement& w) {
    json arr = json::array();
    for (const auto& [key, c] : w.coords) {
        json idx = json::array();
        for (int code : key) {
            auto [i, j] = code_pair(w.n, code);
            idx.push_back(json::array({i, j}));
        }
        arr.push_back({{"indices", idx}, {"coeff", c.str()}});
    }
    return arr;
}

inline json error_json(const Error& e) {
    return {{"error", {{"code", e.code_name()}, {"message", e.what()}}}};
}

}  // namespace gtzeta

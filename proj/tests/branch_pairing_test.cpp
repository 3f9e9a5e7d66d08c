#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtzeta/branch.hpp"
#include "gtzeta/pairing.hpp"
#include "support.hpp"

using namespace gtzeta;

namespace {

GTPattern pat(std::vector<std::vector<long>> rows) { return GTPattern::from_rows(rows); }

std::vector<Weight> interlacing_weights(const Weight& lambda) {
    std::vector<Weight> out;
    std::function<void(std::vector<long>&, int)> rec = [&](std::vector<long>& acc, int i) {
        if (i == lambda.n() - 1) {
            out.emplace_back(std::vector<long>(acc));
            return;
        }
        for (long v = lambda[i + 1]; v <= lambda[i]; ++v) {
            acc.push_back(v);
            rec(acc, i + 1);
            acc.pop_back();
        }
    };
    std::vector<long> acc;
    rec(acc, 0);
    return out;
}

}  // namespace

TEST_CASE("branching maps: frozen examples and round trip") {
    Weight lam({2, 0}), mu({1});
    auto inj = branch_inject(lam, mu, RepVector::unit(mu, pat({{1}})));
    REQUIRE(inj.coords.size() == 1);
    CHECK(inj.at(pat({{2, 0}, {1}})) == Rat(1));

    auto r1 = branch_restrict(lam, mu, RepVector::unit(lam, pat({{2, 0}, {1}})));
    CHECK(r1.at(pat({{1}})) == Rat(1));
    auto r2 = branch_restrict(lam, Weight({2}), RepVector::unit(lam, pat({{2, 0}, {1}})));
    CHECK(r2.is_zero());

    CHECK_THROWS_AS(branch_inject(lam, Weight({3}), RepVector(Weight({3}))), Error);

    for (const auto& l : {Weight({2, 0}), Weight({2, 1, 0}), Weight({1, 0, -1})}) {
        size_t total = 0;
        for (const auto& m : interlacing_weights(l)) {
            const auto& tab = pattern_table(m);
            total += tab.size();
            for (const auto& p : tab.patterns()) {
                auto v = RepVector::unit(m, p);
                CHECK(branch_restrict(l, m, branch_inject(l, m, v)) == v);
            }
        }
        CHECK(total == pattern_table(l).size());
    }
}

TEST_CASE("branching multiplies r by the highest-vector ratio") {
    for (const auto& l : {Weight({2, 0}), Weight({3, 1, 0}), Weight({2, 0, -1})})
        for (const auto& m : interlacing_weights(l)) {
            Rat ratio = highest_pattern(m).stacked(l).r();
            for (const auto& p : pattern_table(m).patterns())
                CHECK(p.stacked(l).r() == ratio * p.r());
        }
}

TEST_CASE("Cartan injector: closed form on the sum stratum") {
    Weight lam({1, 0}), lamp({1, 0});
    auto c = cartan_coefficient(lam, lamp, pat({{1, 0}, {1}}), pat({{1, 0}, {0}}),
                                pat({{2, 0}, {1}}));
    CHECK(c == Rat(1, 2));

    for (auto [l1, l2] : std::vector<std::pair<Weight, Weight>>{
             {Weight({1, 0}), Weight({1, 0})},
             {Weight({2, 0}), Weight({1, 0})},
             {Weight({1, 0, 0}), Weight({1, 1, 0})},
             {Weight({1, 0, -1}), Weight({1, 0, 0})}}) {
        const auto& t1 = pattern_table(l1);
        const auto& t2 = pattern_table(l2);
        for (const auto& m : t1.patterns())
            for (const auto& mp : t2.patterns()) {
                GTPattern sum = m;
                for (int j = 1; j <= sum.n(); ++j)
                    for (int i = 1; i <= j; ++i) sum.at(i, j) += mp.at(i, j);
                CHECK(cartan_coefficient(l1, l2, m, mp, sum) == sum.r() / (m.r() * mp.r()));
            }
        // weight mismatch entries vanish
        for (const auto& mpp : pattern_table(l1 + l2).patterns()) {
            auto img = cartan_inject(l1, l2, RepVector::unit(l1 + l2, mpp));
            for (const auto& [key, coef] : img.coords)
                CHECK(key.first.weight() + key.second.weight() == mpp.weight());
        }
    }
}

TEST_CASE("Cartan round trip R . I = id") {
    for (auto [l1, l2] : std::vector<std::pair<Weight, Weight>>{
             {Weight({1, 0}), Weight({1, 0})},
             {Weight({2, 0}), Weight({1, 1})},
             {Weight({1, 0, 0}), Weight({1, 1, 0})}}) {
        Weight sum = l1 + l2;
        for (const auto& mpp : pattern_table(sum).patterns()) {
            auto v = RepVector::unit(sum, mpp);
            CHECK(cartan_project(l1, l2, cartan_inject(l1, l2, v)) == v);
        }
    }
}

TEST_CASE("Cartan projector sends products of mixed highest vectors") {
    Weight l1({2, 0}), l2({1, 0});
    Weight m1({1}), m2({1});
    TensorVector t(l1, l2);
    t.add(highest_pattern(m1).stacked(l1), highest_pattern(m2).stacked(l2), Rat(1));
    auto img = cartan_project(l1, l2, t);
    REQUIRE(img.coords.size() == 1);
    CHECK(img.at(highest_pattern(Weight({2})).stacked(l1 + l2)) == Rat(1));

    TensorVector hh(l1, l2);
    hh.add(highest_pattern(l1), highest_pattern(l2), Rat(1));
    auto top = cartan_project(l1, l2, hh);
    REQUIRE(top.coords.size() == 1);
    CHECK(top.at(highest_pattern(l1 + l2)) == Rat(1));
}

TEST_CASE("shift invariance of the injector coefficients") {
    Weight l1({2, 0}), l2({1, 0});
    const auto& tsum = pattern_table(l1 + l2);
    for (long l = -2; l <= 2; ++l)
        for (const auto& mpp : tsum.patterns()) {
            auto base = cartan_inject(l1, l2, RepVector::unit(l1 + l2, mpp));
            for (const auto& [key, coef] : base.coords) {
                CHECK(cartan_coefficient(l1.shifted(l), l2, key.first.shifted(l), key.second,
                                         mpp.shifted(l)) == coef);
                CHECK(cartan_coefficient(l1, l2.shifted(l), key.first, key.second.shifted(l),
                                         mpp.shifted(l)) == coef);
            }
        }
}

TEST_CASE("nested coefficients follow the branching ratio") {
    Weight l1({2, 0}), l2({1, 0});
    Weight m1({1}), m2({0});
    Rat ratio = highest_pattern(m1 + m2).stacked(l1 + l2).r() /
                (highest_pattern(m1).stacked(l1).r() * highest_pattern(m2).stacked(l2).r());
    for (const auto& a : pattern_table(m1).patterns())
        for (const auto& b : pattern_table(m2).patterns())
            for (const auto& c : pattern_table(m1 + m2).patterns())
                CHECK(cartan_coefficient(l1, l2, a.stacked(l1), b.stacked(l2),
                                         c.stacked(l1 + l2)) ==
                      ratio * cartan_coefficient(m1, m2, a, b, c));
}

TEST_CASE("extremal injector: lowest stratum is a single product") {
    Weight l1({2, 0}), l2({1, 0});
    std::vector<std::pair<Weight, Weight>> extremals = {
        {Weight({2, 0}), Weight({1, 0})},
        {Weight({0, 2}), Weight({0, 1})}};
    for (auto& [g1, g2] : extremals) {
        auto img = cartan_inject(
            l1, l2, RepVector::unit(l1 + l2, extremal_pattern(l1 + l2, g1 + g2)));
        REQUIRE(img.coords.size() == 1);
        CHECK(img.at(extremal_pattern(l1, g1), extremal_pattern(l2, g2)) == Rat(1));
    }
}

TEST_CASE("injector coefficients are p-integral above the bound") {
    Weight l1({2, 0}), l2({1, 0});
    long bound = l1[0] + l2[0] - l1[1] - l2[1] + l1.n() - 2;  // = 3 + 0 = wait, computed below
    bound = (l1[0] + l2[0]) - (l1[1] + l2[1]) + l1.n() - 2;
    for (const auto& mpp : pattern_table(l1 + l2).patterns()) {
        auto img = cartan_inject(l1, l2, RepVector::unit(l1 + l2, mpp));
        for (const auto& [key, coef] : img.coords)
            for (long p : {2L, 3L, 5L, 7L})
                if (p > bound) CHECK(coef.p_valuation(p) >= 0);
    }
}

TEST_CASE("determinantal oracle agrees with the lowering route") {
    for (auto [l1, l2] : std::vector<std::pair<Weight, Weight>>{
             {Weight({1, 0}), Weight({1, 0})},
             {Weight({2, 0}), Weight({1, 1})},
             {Weight({1, 0, 0}), Weight({1, 1, 0})}}) {
        for (const auto& mpp : pattern_table(l1 + l2).patterns()) {
            auto fast = cartan_inject(l1, l2, RepVector::unit(l1 + l2, mpp));
            auto slow = cartan_inject_oracle(l1, l2, mpp);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("invariant pairing: values, symmetry, duality") {
    Weight lam({2, 0});
    auto v = RepVector::unit(lam, pat({{2, 0}, {1}}));
    auto w = RepVector::unit(lam.dual(), pat({{0, -2}, {-1}}));
    CHECK(pair_lambda(lam, v, w) == Rat(-1, 2));

    for (const auto& l : {Weight({2, 0}), Weight({2, 1, 0}), Weight({1, 0, -1})}) {
        long e = 0;
        for (int i = 1; i <= l.n(); ++i) e += (l.n() - i) * l[i - 1];
        auto hi = RepVector::unit(l, highest_pattern(l));
        auto lo = RepVector::unit(l.dual(), highest_pattern(l).dual());
        CHECK(pair_lambda(l, hi, lo) == Rat(parity_sign(e)));

        // symmetry <v, w>_lambda = <w, v>_{lambda^vee}
        const auto& tab = pattern_table(l);
        for (const auto& m : tab.patterns()) {
            auto a = RepVector::unit(l, m);
            auto b = RepVector::unit(l.dual(), m.dual());
            CHECK(pair_lambda(l, a, b) == pair_lambda(l.dual(), b, a));
        }
    }
    CHECK_THROWS_AS(pair_lambda(lam, RepVector::unit(lam.dual(), pat({{0, -2}, {-1}})), v), Error);
}

TEST_CASE("Gram matrix is anti-diagonal with entries of size r(M)") {
    for (const auto& l : {Weight({2, 0}), Weight({1, 0, -1})}) {
        const auto& tab = pattern_table(l);
        for (const auto& m : tab.patterns())
            for (const auto& nu : pattern_table(l.dual()).patterns()) {
                Rat val = pair_lambda(l, RepVector::unit(l, m),
                                      RepVector::unit(l.dual(), nu));
                if (nu == m.dual()) {
                    CHECK(val.abs() == m.r());
                } else {
                    CHECK(val.is_zero());
                }
            }
    }
}

TEST_CASE("twisted pairing against GL_{n-1}") {
    Weight lam({0, -1}), mu({0});
    auto v = RepVector::unit(lam, pat({{0, -1}, {0}}));
    auto w = RepVector::unit(mu, pat({{0}}));
    CHECK(pair_lambda_mu(lam, mu, 0, v, w) == Rat(1));

    auto v2 = RepVector::unit(lam, pat({{0, -1}, {-1}}));
    CHECK(pair_lambda_mu(lam, mu, 0, v2, w) == Rat(0));

    CHECK_THROWS_AS(pair_lambda_mu(Weight({0, 0}), Weight({5}), 0, RepVector(Weight({0, 0})),
                                   RepVector(Weight({5}))),
                    Error);
}

TEST_CASE("twisted pairing is GL_{n-1}-equivariant into det^l") {
    // <tau_lambda(iota(g)) v, tau_mu(g) w>^{(l)} = det(g)^l <v, w>^{(l)},
    // with both actions evaluated through the polynomial model
    Weight lam({0, -1, -2}), mu({1, 0});
    const int n = lam.n();
    auto act_via_det = [&](const Weight& type, const std::vector<std::vector<Rat>>& g,
                           const RepVector& x) {
        PolyVector acc(type.n(), 0);
        bool started = false;
        for (const auto& [m, coef] : x.coords) {
            PolyVector part = xi_polynomial(type, m);
            part *= coef;
            if (!started) {
                acc = part;
                started = true;
            } else {
                acc += part;
            }
        }
        RepVector out(type);
        for (auto& [m, coef] : coords_in_xi(type, det_act_group(g, acc))) out.add(m, coef);
        return out;
    };
    auto embed = [&](const std::vector<std::vector<Rat>>& g) {
        std::vector<std::vector<Rat>> big(static_cast<size_t>(n),
                                          std::vector<Rat>(static_cast<size_t>(n)));
        for (int a = 0; a < n - 1; ++a)
            for (int b = 0; b < n - 1; ++b)
                big[static_cast<size_t>(a)][static_cast<size_t>(b)] = g[static_cast<size_t>(a)][static_cast<size_t>(b)];
        big[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] = Rat(1);
        return big;
    };

    RepVector v(lam), w(mu);
    for (const auto& m : pattern_table(lam).patterns())
        v.add(m, Rat(testsupport::rand_int(-2, 2)));
    for (const auto& m : pattern_table(mu).patterns())
        w.add(m, Rat(testsupport::rand_int(-2, 2)));

    std::vector<std::pair<std::vector<std::vector<Rat>>, Rat>> gens;  // (g, det g)
    gens.push_back({{{Rat(2), Rat(0)}, {Rat(0), Rat(3, 2)}}, Rat(3)});
    gens.push_back({{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}}, Rat(1)});
    gens.push_back({{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}}, Rat(1)});
    gens.push_back({{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, Rat(-1)});

    for (long l : {0L, -1L}) {
        Rat base = pair_lambda_mu(lam, mu, l, v, w);
        for (const auto& [g, detg] : gens) {
            Rat lhs = pair_lambda_mu(lam, mu, l, act_via_det(lam, embed(g), v),
                                     act_via_det(mu, g, w));
            CHECK(lhs == base * detg.pow(l));
        }
    }
}

TEST_CASE("conjugation map") {
    Weight lam({2, 0});
    auto img = conj_map(lam, RepVector::unit(lam, pat({{2, 0}, {1}})));
    REQUIRE(img.coords.size() == 1);
    CHECK(img.at(pat({{0, -2}, {-1}})) == Rat(-1));

    for (const auto& l : {Weight({2, 0}), Weight({2, 1, 0})}) {
        long e = 0;
        for (int i = 1; i <= l.n(); ++i) e += (l.n() - i) * l[i - 1];
        auto hi = conj_map(l, RepVector::unit(l, highest_pattern(l)));
        CHECK(hi.at(highest_pattern(l).dual()) == Rat(parity_sign(e)));

        // intertwining: conj(E_{i,j} v) = -E_{j,i} conj(v)
        const auto& tab = pattern_table(l);
        for (const auto& m : tab.patterns())
            for (int i = 1; i <= l.n(); ++i)
                for (int j = 1; j <= l.n(); ++j) {
                    auto lhs = conj_map(l, act(l, i, j, RepVector::unit(l, m)));
                    auto rhs = act(l.dual(), j, i, conj_map(l, RepVector::unit(l, m))) * Rat(-1);
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("det shift on GT coordinates") {
    Weight lam({2, 0});
    auto shifted = det_shift(lam, 1, RepVector::unit(lam, pat({{2, 0}, {1}})));
    REQUIRE(shifted.coords.size() == 1);
    CHECK(shifted.at(pat({{1, -1}, {0}})) == Rat(1));
    auto same = det_shift(lam, 0, RepVector::unit(lam, pat({{2, 0}, {1}})));
    CHECK(same.at(pat({{2, 0}, {1}})) == Rat(1));

    // bilinear pair values move by (-1)^{s b_n}: q(M-s) = q(M) - s n(n-1)/2,
    // while r (the hermitian norm data) is preserved on the nose
    for (const auto& l : {Weight({2, 0}), Weight({2, 1, 0})}) {
        long bn = static_cast<long>(l.n()) * (l.n() - 1) / 2;
        for (long s : {-2L, 1L, 3L}) {
            const auto& tab = pattern_table(l);
            for (const auto& m : tab.patterns()) {
                CHECK(m.shifted(-s).r() == m.r());
                auto v = RepVector::unit(l, m);
                auto w = RepVector::unit(l.dual(), m.dual());
                CHECK(pair_lambda(l.shifted(-s), det_shift(l, s, v),
                                  det_shift(l.dual(), -s, w)) ==
                      pair_lambda(l, v, w) * Rat(parity_sign(s * bn)));
            }
        }
    }
}

TEST_CASE("identity element of V_d (x) V_{d^vee}") {
    auto e0 = id_element(Weight({0}));
    REQUIRE(e0.coords.size() == 1);
    CHECK(e0.at(pat({{0}}), pat({{0}})) == Rat(1));

    auto e = id_element(Weight({1, 0}));
    REQUIRE(e.coords.size() == 2);
    CHECK(e.at(pat({{1, 0}, {1}}), pat({{0, -1}, {-1}})) == Rat(-1));
    CHECK(e.at(pat({{1, 0}, {0}}), pat({{0, -1}, {0}})) == Rat(1));

    // contracting the second leg against any v recovers v
    for (const auto& d : {Weight({1, 0}), Weight({2, 0, -1})}) {
        auto idv = id_element(d);
        const auto& tab = pattern_table(d);
        for (const auto& m : tab.patterns()) {
            RepVector v = RepVector::unit(d, m);
            RepVector rebuilt(d);
            for (const auto& [key, coef] : idv.coords) {
                Rat c = pair_lambda(d, v, RepVector::unit(d.dual(), key.second));
                rebuilt.add(key.first, c * coef);
            }
            CHECK(rebuilt == v);
        }
    }
}

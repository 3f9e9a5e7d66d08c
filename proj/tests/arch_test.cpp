#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "gtzeta/arch.hpp"
#include "support.hpp"

using namespace gtzeta;
using testsupport::rand_int;

TEST_CASE("archimedean zeta constant") {
    CHECK(archzeta_constant(2, 0, 0, 0, +1) == GaussianRational(Rat(-1, 4), Rat(0)));
    CHECK(archzeta_constant(2, 1, 0, 0, +1) == GaussianRational(Rat(0), Rat(-1, 4)));
    // flipping eps conjugates the (eps i)-power factor
    for (long w : {-1L, 0L, 2L})
        for (long wp : {0L, 1L})
            for (long m : {-1L, 0L, 1L}) {
                auto plus = archzeta_constant(3, w, wp, m, +1);
                auto minus = archzeta_constant(3, w, wp, m, -1);
                long e = 3L * (w - wp);  // b_3 = 3
                if (e % 2 == 0) {
                    CHECK(plus == minus);
                } else {
                    CHECK(plus == minus * GaussianRational(-1));
                }
            }
}

TEST_CASE("global constant") {
    auto g1 = global_constant_C(1, 2, 0, 0, 0, +1, 5);
    CHECK(g1.d_part.value == Rat(1));
    CHECK_FALSE(g1.d_part.has_sqrt);
    CHECK(g1.place_part == archzeta_constant(2, 0, 0, 0, +1));

    auto g2 = global_constant_C(2, 2, 0, 0, 0, +1, 5);
    CHECK(g2.place_part == archzeta_constant(2, 0, 0, 0, +1) * archzeta_constant(2, 0, 0, 0, +1));

    auto g3 = global_constant_C(1, 2, 0, 0, 1, +1, 3);
    CHECK(g3.d_part.value == Rat(3));  // exponent n(n-1)m/2 = 1
}

TEST_CASE("Gamma_n factors") {
    CHECK(gamma_n_factor({}, {}).shifts.empty());

    auto g = gamma_n_factor({Rat(1, 2), Rat(-1, 2)}, {3, 1});
    REQUIRE(g.sorted_list().size() == 1);
    CHECK(g.sorted_list()[0] == Rat(3));

    for (int trial = 0; trial < 20; ++trial) {
        int n = static_cast<int>(rand_int(1, 4));
        std::vector<Rat> nu;
        std::vector<long> d;
        for (int i = 0; i < n; ++i) {
            nu.emplace_back(rand_int(-4, 4), rand_int(1, 3));
            d.push_back(rand_int(-4, 4));
        }
        Rat s(rand_int(-3, 3), rand_int(1, 2));
        long l = rand_int(-3, 3);
        std::vector<Rat> nus = nu;
        for (auto& x : nus) x += s;
        std::vector<long> dl = d;
        for (auto& x : dl) x += l;
        CHECK(gamma_n_factor(nus, dl) == gamma_n_factor(nu, d));
    }
}

TEST_CASE("archimedean L-factor shifts") {
    auto l = l_factor_arch({1, -1}, {Rat(0), Rat(0)}, {0}, {Rat(0)});
    auto shifts = l.sorted_list();
    REQUIRE(shifts.size() == 2);
    CHECK(shifts[0] == Rat(1, 2));
    CHECK(shifts[1] == Rat(1, 2));

    CHECK(l_factor_arch({3}, {Rat(0)}, {}, {}).shifts.empty());

    // invariance under simultaneous permutations of each side
    auto a = l_factor_arch({2, 0, -1}, {Rat(1), Rat(0), Rat(-1)}, {1, 0}, {Rat(1, 2), Rat(0)});
    auto b = l_factor_arch({0, -1, 2}, {Rat(0), Rat(-1), Rat(1)}, {0, 1}, {Rat(0), Rat(1, 2)});
    CHECK(a == b);
}

TEST_CASE("Gamma_C special values") {
    SymbolicValue g1 = eval_gamma_C(Rat(1));
    CHECK(g1.rational == Rat(1));
    CHECK(g1.pi_pow == -1);
    CHECK_FALSE(g1.sqrt2);

    SymbolicValue gh = eval_gamma_C(Rat(1, 2));
    CHECK(gh.rational == Rat(1));
    CHECK(gh.pi_pow == 0);
    CHECK(gh.sqrt2);

    SymbolicValue g2 = eval_gamma_C(Rat(2));
    CHECK(g2.rational == Rat(1, 2));
    CHECK(g2.pi_pow == -2);

    // Gamma_C(s+1) = s/(2 pi) Gamma_C(s) on half-integers
    for (long twice = 1; twice <= 9; ++twice) {
        Rat s(twice, 2);
        SymbolicValue lhs = eval_gamma_C(s + Rat(1));
        SymbolicValue rhs = eval_gamma_C(s);
        rhs.rational *= s / Rat(2);
        rhs.pi_pow -= 1;
        CHECK(lhs == rhs);
    }

    CHECK_THROWS_AS(eval_gamma_C(Rat(0)), Error);
    CHECK_THROWS_AS(eval_gamma_C(Rat(-3, 2)), Error);
    CHECK_THROWS_AS(eval_gamma_C(Rat(1, 3)), Error);
}

TEST_CASE("Whittaker prefactor") {
    CHECK(whittaker_prefactor({0, 0, 0}, +1) == GaussianRational::one());
    CHECK(whittaker_prefactor({1, 0}, +1) == GaussianRational::one());
    CHECK(whittaker_prefactor({0, 1}, +1) == GaussianRational(Rat(0), Rat(1)));
    // dominant d: total (-eps i)^{sum (i-1) d_i}
    for (int eps : {+1, -1}) {
        std::vector<long> d = {3, 1, 0};
        long e = 0;
        for (size_t i = 0; i < d.size(); ++i) e += static_cast<long>(i) * d[i];
        GaussianRational expect = GaussianRational::eps_i_power(-eps, e);
        CHECK(whittaker_prefactor(d, eps) == expect);
    }
}

TEST_CASE("pre-class coefficients: degenerate and closed-form strata") {
    // n = 1: all pattern sets are singletons and the coefficient is 1
    PreClass one(Weight({2}), 1);
    CHECK(one.coefficient(one.tab_d().at(0), one.tab_n().at(0), one.tab_p().at(0),
                          one.tab_q().at(0)) == Rat(1));

    // top stratum: c(H(d'), H(-2 rho), H(-mu), H(mu - w')) = (-1)^{q(H(d')) + q(H(mu-w'))}
    for (auto [mu, wp] : std::vector<std::pair<Weight, long>>{
             {Weight({0, 0}), 0}, {Weight({1, 0}), 0}, {Weight({1, 0}), 1}, {Weight({2, 1}), -1}}) {
        const int nm1 = mu.n();
        const PreClass& pc = pre_class(mu, wp);
        Weight twoRho = rho2(nm1);
        Weight lowRho{std::vector<long>(twoRho.v.rbegin(), twoRho.v.rend())};
        std::vector<long> negmu(mu.v.rbegin(), mu.v.rend());
        for (auto& x : negmu) x = -x;
        GTPattern hd = highest_pattern(pc.d());
        GTPattern hn = extremal_pattern(twoRho, lowRho);
        GTPattern hp = extremal_pattern(mu.dual(), Weight{std::vector<long>(negmu.rbegin(), negmu.rend())});
        GTPattern hq = highest_pattern(mu.shifted(-wp));
        CHECK(pc.coefficient(hd, hn, hp, hq) ==
              Rat(parity_sign(hd.q() + hq.q())));
    }
}

TEST_CASE("flagship scalar extraction against the closed form, n = 2") {
    struct Case {
        Weight lambda;
        long w;
        Weight mu;
        long wp;
        long m;
    };
    std::vector<Case> cases = {
        {Weight({0, 0}), 0, Weight({0}), 0, 0},
        {Weight({0, -1}), 0, Weight({1}), 0, 0},
        {Weight({1, 0}), 0, Weight({0}), 1, -1},
        {Weight({1, 0}), 1, Weight({0}), 1, -1},
        {Weight({2, 0}), 1, Weight({-1}), 0, 0},
        {Weight({2, -1}), 2, Weight({0}), -1, 0},
    };
    for (const auto& c : cases) {
        CAPTURE(c.lambda.str());
        CAPTURE(c.w);
        CAPTURE(c.mu.str());
        CAPTURE(c.wp);
        CAPTURE(c.m);
        Rat got = extract_cm(c.lambda, c.w, c.mu, c.wp, c.m);
        CHECK(got == cm_closed_form(2, c.wp, c.mu, c.m));
        CHECK(got == clem1_value(2, c.wp, c.mu, c.m));
    }
}

TEST_CASE("flagship scalar extraction, one n = 3 case") {
    Weight lambda({1, 0, -1}), mu({0, 0});
    Rat got = extract_cm(lambda, 0, mu, 0, 0);
    CHECK(got == cm_closed_form(3, 0, mu, 0));
    CHECK(got == clem1_value(3, 0, mu, 0));
}

TEST_CASE("pre-class coefficients are p-integral above the bound") {
    // largest spread among the involved weights is spread(d) = 2 spread(lambda) + 2(n-1)
    for (auto [lam, w] : std::vector<std::pair<Weight, long>>{{Weight({1, 0}), 0},
                                                              {Weight({1, 0}), 1},
                                                              {Weight({1, -1}), -1}}) {
        const PreClass& pc = pre_class(lam, w);
        long bound = pc.d().spread() + lam.n() - 2;
        for (const auto& [key, col] : pc.columns())
            for (const auto& [mi, c] : col)
                for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
                    if (p > bound) CHECK(c.p_valuation(p) >= 0);
    }
}

TEST_CASE("flagship extraction at further n = 3 types") {
    {
        Weight lambda({2, 1, 0}), mu({-1, -2});
        CHECK(extract_cm(lambda, 0, mu, 0, 0) == cm_closed_form(3, 0, mu, 0));
    }
    {
        // spread 4: G(d) has 343 patterns
        Weight lambda({2, 0, -2}), mu({1, 0});
        CHECK(extract_cm(lambda, 0, mu, 0, 0) == cm_closed_form(3, 0, mu, 0));
    }
}

TEST_CASE("concurrent extraction over shared caches") {
    struct Case {
        Weight lambda;
        long w;
        Weight mu;
        long wp;
        long m;
    };
    std::vector<Case> cases = {
        {Weight({0, 0}), 0, Weight({0}), 0, 0},    {Weight({0, -1}), 0, Weight({1}), 0, 0},
        {Weight({1, 0}), 0, Weight({0}), 1, -1},   {Weight({1, 0}), 1, Weight({0}), 1, -1},
        {Weight({2, 0}), 1, Weight({-1}), 0, 0},   {Weight({2, -1}), 2, Weight({0}), -1, 0},
    };
    std::vector<Rat> results(cases.size());
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t]() {
            for (size_t k = static_cast<size_t>(t); k < cases.size(); k += 4) {
                const auto& c = cases[k];
                results[k] = extract_cm(c.lambda, c.w, c.mu, c.wp, c.m);
            }
        });
    for (auto& th : pool) th.join();
    for (size_t k = 0; k < cases.size(); ++k)
        CHECK(results[k] == cm_closed_form(2, cases[k].wp, cases[k].mu, cases[k].m));
}

TEST_CASE("non-critical parameters are rejected") {
    CHECK_THROWS_AS(psi_pairing(Weight({0, 0}), 0, Weight({5}), 0, 0), Error);
}

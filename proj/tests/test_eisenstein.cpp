#include "siegel/eisenstein.hpp"

#include <doctest.h>

#include <random>

using namespace siegel;

TEST_CASE("character restriction, conjugation and stepping") {
    CharacterProduct chi(6);
    CHECK(chi.exponent(2) == 1);
    CHECK(chi.exponent(3) == 1);
    auto [c2, c3] = character_split(chi, 2);
    CHECK(c2.exponent(2) == 1);
    CHECK(c2.exponent(3) == 0);
    CHECK(c3.exponent(2) == 0);
    CHECK(c3.exponent(3) == 1);
    CharacterProduct stepped = chi.step(2);
    CHECK(stepped.exponent(2) == -1);
    CHECK(stepped.exponent(3) == 1);
    CHECK(chi.step(1) .exponent(2) == 1);
    CHECK(chi.step(6).exponent(3) == -1);
    CHECK(character_split(chi, 1).first.to_string() == "1");
    CHECK(character_split(chi, 6).second.to_string() == "1");
    CHECK_THROWS_AS(chi.step(4), std::invalid_argument);
}

TEST_CASE("character powers as monomials") {
    ScalarContext ctx;
    CharacterProduct chi(6);
    LaurentScalar v = chi.at_p_power(ctx, 2);
    LaurentScalar want = LaurentScalar::monomial(ctx.X_q(2), 2) *
                         LaurentScalar::monomial(ctx.X_q(3), 2);
    CHECK(v == want);
    CHECK(chi.step(2).at_p_power(ctx, 1) ==
          LaurentScalar::monomial(ctx.X_q(2), -1) * LaurentScalar::monomial(ctx.X_q(3), 1));
    CHECK(chi.part_at_p_power(ctx, 1, 5) == LaurentScalar::one());
}

TEST_CASE("intro degree-two theorem, formally in the character symbols") {
    ScalarContext ctx;
    long N = 6, p = 5;
    CharacterProduct chi(N);
    for (long l1 : divisors(N)) {
        CuspTuple cusp(N, 2, {l1});
        LaurentScalar tp = lift_eigenvalue_tp(ctx, p, 2, 1, cusp, chi);
        LaurentScalar tp_want =
            twisted_coeff_tp(ctx, p, 2, l1, chi) * LaurentScalar::monomial(ctx.L, 1);
        CHECK(tp == tp_want);

        LaurentScalar tj = lift_eigenvalue_tj(ctx, p, 2, 1, 1, cusp, chi);
        auto tw = twisted_coeffs_tj(ctx, p, 2, 1, l1, chi);
        LaurentScalar tj_want = tw[0] * LaurentScalar::monomial(ctx.L_index(1), 1) +
                                tw[1] * LaurentScalar::monomial(ctx.L_index(0), 1);
        CHECK(tj == tj_want);
    }
}

TEST_CASE("twisted coefficients reduce to Theorem 1 at l1 = 1") {
    ScalarContext ctx;
    CharacterProduct chi(6);
    ChiPow cp = chi_pow_of(ctx, chi);
    for (int n : {2, 3}) {
        CHECK(twisted_coeff_tp(ctx, 5, n, 1, chi) == c_tp(ctx, PrimeVal::concrete(5), cp, n));
        auto tw = twisted_coeffs_tj(ctx, 5, n, 2, 1, chi);
        CHECK(tw[0] == c_tj(ctx, PrimeVal::concrete(5), cp, n, 2, 2));
        CHECK(tw[1] == c_tj(ctx, PrimeVal::concrete(5), cp, n, 2, 1));
        CHECK(tw[2] == c_tj(ctx, PrimeVal::concrete(5), cp, n, 2, 0));
    }
    // j - 2 < 0: third coefficient vanishes by convention
    auto tw0 = twisted_coeffs_tj(ctx, 5, 2, 1, 2, chi);
    CHECK(tw0[2].is_zero());
}

TEST_CASE("character-step consistency with the printed accumulated product") {
    // after the steps for l_{n-r}, ..., l_{t-r}, the accumulated character is
    // conj(chi_{l_{n-r} ... l_{t-r}}) chi_{l_{t-r-1} ... l_0}
    long N = 30;
    for (int n = 2; n <= 4; ++n) {
        int r = 1;
        CuspTuple cusp(N, n, n - r == 2 ? std::vector<long>{2, 3}
                                        : std::vector<long>{2, 3, 5});
        CharacterProduct psi(N);
        for (int t = n; t >= r + 1; --t) {
            psi = psi.step(cusp.l(t - r));
            long flipped = 1;
            for (int i = n - r; i >= t - r; --i) flipped *= cusp.l(i);
            for (long q : prime_divisors(N))
                CHECK(psi.exponent(q) == (flipped % q == 0 ? -1 : 1));
        }
    }
}

TEST_CASE("linearity in the base eigenvalues") {
    ScalarContext ctx;
    CharacterProduct chi(6);
    for (int n = 2; n <= 3; ++n)
        for (int r = 0; r < n; ++r)
            for (int j = 0; j <= n; ++j) {
                std::vector<long> parts((size_t)(n - r), 1);
                if (n - r >= 2) { parts[0] = 2; parts[1] = 3; } else parts[0] = 2;
                CuspTuple cusp(6, n, parts);
                LaurentScalar e = lift_eigenvalue_tj(ctx, 5, n, r, j, cusp, chi);
                std::vector<SymbolId> ls;
                for (int i = 0; i <= r; ++i) ls.push_back(ctx.L_index(i));
                CHECK(e.total_degree_in(ls) <= 1);
            }
}

TEST_CASE("single-step r = n-1 recursion matches the lemma form") {
    ScalarContext ctx;
    long N = 6, p = 5;
    CharacterProduct chi(N);
    for (int n = 2; n <= 4; ++n)
        for (long l1 : divisors(N)) {
            CuspTuple cusp(N, n, {l1});
            CharacterProduct stepped = chi.step(l1);
            ChiPow cp = chi_pow_of(ctx, stepped);
            // T(p): chi_{l1}(p^n) c^{(n-1)}(stepped) L
            CHECK(lift_eigenvalue_tp(ctx, p, n, n - 1, cusp, chi) ==
                  chi.part_at_p_power(ctx, l1, n) * c_tp(ctx, PrimeVal::concrete(p), cp, n) *
                      LaurentScalar::monomial(ctx.L, 1));
            // T_j(p^2): chi_{l1}(p^{2n}) [c_{j,j} L_j + c_{j,j-1} L_{j-1} + c_{j,j-2} L_{j-2}]
            for (int j = 0; j <= n; ++j) {
                LaurentScalar want;
                for (int d = 0; d <= 2; ++d) {
                    int kk = j - d;
                    if (kk < 0 || kk > n - 1) continue;
                    want += c_tj(ctx, PrimeVal::concrete(p), cp, n, j, kk) *
                            LaurentScalar::monomial(ctx.L_index(kk), 1);
                }
                want *= chi.part_at_p_power(ctx, l1, 2L * n);
                CHECK(lift_eigenvalue_tj(ctx, p, n, n - 1, j, cusp, chi) == want);
            }
        }
}

TEST_CASE("base degree-1 lambdas and the footnote numbers") {
    ScalarContext ctx;
    CharacterProduct triv(1);
    Degree1Base base = base_degree1_lambdas(ctx, 2, triv);
    BindingMap b;
    b[ctx.K] = SymbolBinding::of(rat_pow(Rational(2), 12));
    b[ctx.L] = SymbolBinding::of(Rational(-24));
    CHECK(*evaluate_rational(base.lambda0, b, ctx.reg) == 512);
    CHECK(*evaluate_rational(base.lambda1, b, ctx.reg) == -1048512);

    // formal shape: lambda1 = L^2 - (1 + K p^{-1}) K p^{-3} for trivial psi
    LaurentScalar l2 = LaurentScalar::monomial(ctx.L, 2);
    LaurentScalar kp = LaurentScalar::monomial(ctx.K, 1);
    LaurentScalar want = l2 - (LaurentScalar::one() + kp * Rational(1, 2)) * kp * Rational(1, 8);
    CHECK(base.lambda1 == want);

    // lambda0 at p=3, k=4 -> 3
    Degree1Base b3 = base_degree1_lambdas(ctx, 3, triv);
    BindingMap bm;
    bm[ctx.K] = SymbolBinding::of(rat_pow(Rational(3), 4));
    CHECK(*evaluate_rational(b3.lambda0, bm, ctx.reg) == 3);
}

TEST_CASE("lambda1 relation round-trips under evaluation") {
    ScalarContext ctx;
    CharacterProduct chi(6);
    CharacterProduct psi = chi.step(2);
    Degree1Base base = base_degree1_lambdas(ctx, 5, psi);
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> val(-9, 9);
    for (int trial = 0; trial < 10; ++trial) {
        BindingMap b;
        b[ctx.K] = SymbolBinding::of(Rational(val(rng), 1 + std::abs(val(rng))));
        b[ctx.L] = SymbolBinding::of(Rational(val(rng)));
        b[ctx.X_q(2)] = SymbolBinding::of(Rational(val(rng) == 0 ? 1 : val(rng)));
        b[ctx.X_q(3)] = SymbolBinding::of(Rational(val(rng) == 0 ? 1 : val(rng)));
        auto l0 = evaluate_rational(base.lambda0, b, ctx.reg);
        auto l1 = evaluate_rational(base.lambda1, b, ctx.reg);
        auto L = evaluate_rational(LaurentScalar::monomial(ctx.L, 1), b, ctx.reg);
        auto c = evaluate_rational(LaurentScalar::one() +
                                       psi.conj().at_p_power(ctx, 1) *
                                           LaurentScalar::monomial(ctx.K, 1) * Rational(1, 5),
                                   b, ctx.reg);
        REQUIRE((l0 && l1 && L && c));
        CHECK(*l1 == (*L) * (*L) - (*c) * (*l0));
    }
}

TEST_CASE("Siegel-Eisenstein eigenvalues match the classical divisor sums") {
    ScalarContext ctx;
    CharacterProduct triv(1);
    // n = 1, r = 0: lambda^{(1)}(p) = 1 + p^{k-1} = sigma_{k-1}(p)
    for (auto [k, p] : std::vector<std::pair<long, long>>{{4, 2}, {12, 3}}) {
        CuspTuple c(1, 1, {1});
        LaurentScalar e = lift_eigenvalue_tp(ctx, p, 1, 0, c, triv);
        EigenvalueBindings b;
        b.k = k;
        auto v = evaluate_eigenvalue_rational(ctx, e, p, 1, b);
        REQUIRE(v);
        CHECK(*v == Rational(sigma_power_sum(p, k - 1)));
    }
    // n = 2: the product (1 + p^{k-1})(1 + p^{k-2})
    CuspTuple c2(1, 2, {1, 1});
    LaurentScalar e2 = lift_eigenvalue_tp(ctx, 2, 2, 0, c2, triv);
    EigenvalueBindings b2;
    b2.k = 4;
    CHECK(*evaluate_eigenvalue_rational(ctx, e2, 2, 1, b2) == 45);
}

TEST_CASE("evaluation guards the bad primes") {
    ScalarContext ctx;
    CharacterProduct chi(6);
    CuspTuple c(6, 2, {1});
    LaurentScalar e = lift_eigenvalue_tp(ctx, 5, 2, 1, c, chi);
    EigenvalueBindings b;
    b.k = 4;
    b.lambda_tp = Rational(1);
    CHECK_THROWS_WITH_AS(evaluate_eigenvalue_rational(ctx, e, 2, 6, b),
                         "bad prime for eigenvalue evaluation", std::domain_error);
}

TEST_CASE("required base indices and zero pruning") {
    ScalarContext ctx;
    CharacterProduct triv(1);
    // n=3, r=1, j=3: the chain reaches indices in [max(0, j-2(n-r)), min(j, r)]
    // = {0, 1}; the lambda_{-1} branch prunes through the c-convention
    CuspTuple c(1, 3, {1, 1});
    LaurentScalar e = lift_eigenvalue_tj(ctx, 5, 3, 1, 3, c, triv);
    auto need = required_base_indices(ctx, e, 1);
    CHECK(need == std::vector<int>{0, 1});

    LaurentScalar e0 = lift_eigenvalue_tj(ctx, 5, 3, 1, 0, c, triv);
    CHECK(required_base_indices(ctx, e0, 1) == std::vector<int>{0});
}

TEST_CASE("complex evaluation with root-of-unity characters") {
    ScalarContext ctx;
    CharacterProduct chi(6);
    CuspTuple cusp(6, 2, {2});
    LaurentScalar e = lift_eigenvalue_tp(ctx, 5, 2, 1, cusp, chi);
    EigenvalueBindings b;
    b.k = 4;
    b.lambda_tp = Rational(3);
    b.chi_values[2] = SymbolBinding::of(RootOfUnity(1, 4));  // chi_2(5) = i
    b.chi_values[3] = SymbolBinding::of(Rational(-1));
    auto exact = evaluate_eigenvalue_rational(ctx, e, 5, 6, b);
    CHECK(!exact.has_value());  // genuinely complex
    auto z = evaluate_eigenvalue_complex(ctx, e, 5, 6, b);
    // X_2^2 (1 + X_2^{-1} X_3 K p^{-2}) L = (-1)(1 + 25i)(3) = -3 - 75i
    CHECK(std::abs(z.real() - (-3.0)) < 1e-9);
    CHECK(std::abs(z.imag() - (-75.0)) < 1e-9);
}

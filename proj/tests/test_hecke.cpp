#include "siegel/hecke.hpp"
#include "siegel/eisenstein.hpp"

#include <doctest.h>

#include <random>

using namespace siegel;

namespace {

LaurentScalar kpow(ScalarContext& ctx, int a) { return LaurentScalar::monomial(ctx.K, a); }
LaurentScalar xpow(ScalarContext& ctx, int a) { return LaurentScalar::monomial(ctx.X, a); }
LaurentScalar rat(long n, long d = 1) { return LaurentScalar::from_rational(Rational(n, d)); }

}  // namespace

TEST_CASE("E exponent monomials") {
    ScalarContext ctx;
    PrimeVal p2 = PrimeVal::concrete(2);
    CHECK(exponent_E(ctx, p2, PType{1, 0, 0}, 1) == kpow(ctx, 1) * rat(1, 2));
    CHECK(exponent_E(ctx, p2, PType{0, 1, 0}, 1) == rat(1));
    CHECK(exponent_E(ctx, p2, PType{0, 2, 0}, 2) == rat(1));
    CHECK_THROWS_AS(exponent_E(ctx, p2, PType{0, 0, 1}, 1), std::invalid_argument);
}

TEST_CASE("E_j exponent monomials, read as printed") {
    ScalarContext ctx;
    PrimeVal p2 = PrimeVal::concrete(2);
    // E_1((1,0,0), n=1) = 2k - 2; the spec example K^2 p^{-1} substitutes m0
    // for m1 (see ledger); the verify engines pin this reading
    CHECK(exponent_Ej(ctx, p2, PType{1, 0, 0}, 1, 1) == kpow(ctx, 2) * rat(1, 4));
    CHECK(exponent_Ej(ctx, p2, PType{0, 1, 0}, 1, 1) == kpow(ctx, 1) * rat(1, 2));
    CHECK(exponent_Ej(ctx, p2, PType{0, 2, 0}, 2, 2) == kpow(ctx, 2) * rat(1, 8));
    CHECK(exponent_Ej(ctx, p2, PType{0, 0, 1}, 1, 1) == rat(1));
}

TEST_CASE("intertwining coefficient closed forms at sample points") {
    ScalarContext ctx;
    ChiPow chi = chi_plain(ctx);
    // n=2, k=4, p=2, X=1: c^{(1)} = 1 + 2^2 = 5
    BindingMap b;
    b[ctx.K] = SymbolBinding::of(Rational(16));
    b[ctx.X] = SymbolBinding::of(Rational(1));
    auto v = evaluate_rational(c_tp(ctx, PrimeVal::concrete(2), chi, 2), b, ctx.reg);
    CHECK(*v == 5);
    // c_{1,1} = X K p^{1-4} -> 2
    auto w = evaluate_rational(c_tj(ctx, PrimeVal::concrete(2), chi, 2, 1, 1), b, ctx.reg);
    CHECK(*w == 2);
    // conventions: out-of-range coefficients vanish
    CHECK(c_tj(ctx, PrimeVal::concrete(2), chi, 2, 0, -1).is_zero());
    CHECK(c_tj(ctx, PrimeVal::concrete(2), chi, 2, 0, -2).is_zero());
    CHECK(c_tj(ctx, PrimeVal::concrete(2), chi, 3, 3, 3).is_zero());  // s > n-1
}

TEST_CASE("alpha examples at degree 1") {
    GramLattice l2(IntMat{{2}});
    GramLattice l4(IntMat{{4}});
    // Q(e) = 1 mod 2: no isotropic codim-0 subspace
    CHECK(alpha_isotropic(whole_lattice(l2, 2), 1, 1) == 0);
    // Q(e) = 2 = 0 mod 2: the whole line is isotropic
    CHECK(alpha_isotropic(whole_lattice(l4, 2), 1, 1) == 1);
    // m1 < n - j: no subspace of negative dimension
    CHECK(alpha_isotropic(scaled_lattice(l2, 2, 1), 1, 0) == 0);
    // m1 = n - j: the zero-dimensional subspace counts once
    CHECK(alpha_isotropic(scaled_lattice(l2, 2, 1), 1, 1) == 1);
}

TEST_CASE("alpha with negative target dimension is zero") {
    GramLattice l(IntMat{{2, 0}, {0, 2}});
    // p-type (0,0,2): middle block empty; codim 1 of a 0-dim space is empty
    Sublattice om = scaled_lattice(l, 2, 1);
    CHECK(alpha_isotropic(om, 2, 1) == 0);
    CHECK(alpha_isotropic(om, 2, 2) == 1);
    CHECK(alpha_isotropic(om, 2, 3) == 0);  // negative codimension
}

TEST_CASE("alpha is decomposition-independent on the even-integral locus") {
    GramLattice lat(extend_by_zero(GramLattice(IntMat{{2, 1}, {1, 2}})).gram(), false);
    for (long p : {2L, 3L})
        for (const auto& om : enumerate_between(lat, p, BetweenMode::WideTilde)) {
            if (!is_even_integral(om.induced_gram_num(), om.induced_gram_den())) continue;
            int n = 3;
            for (int j = 0; j <= n; ++j) {
                Integer base = alpha_isotropic(om, n, j);
                for (std::uint64_t seed : {11ULL, 22ULL, 33ULL})
                    CHECK(alpha_isotropic_randomized(om, n, j, seed) == base);
            }
        }
}

TEST_CASE("degree-1 tilde action against the classical coset computation") {
    // frozen oracle, derived by an explicit coset decomposition of
    // T~_1 = T_0 + T_1 at degree 1:
    //   a(m; F|T~_1) = X^2 K^2 p^{-2} a(m/p^2) + X K p^{-1} [p|m] a(m) + a(p^2 m)
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> val(-9, 9);
    for (long p : {2L, 3L}) {
        ScalarContext ctx;
        std::map<long, LaurentScalar> a;
        for (long m = 0; m <= 40 * p * p; ++m) a[m] = rat(val(rng));
        TableSet tables;
        CoeffTable t1;
        t1.degree = 1;
        for (long m = 1; m <= 40 * p * p; ++m) {
            IntMat g(1, 1);
            g.at(0, 0) = 2 * m;
            t1.entries.emplace_back(g, a[m]);
        }
        CoeffTable t0;
        t0.degree = 0;
        t0.entries.emplace_back(IntMat(0, 0), a[0]);
        tables.by_degree[1] = t1;
        tables.by_degree[0] = t0;

        PrimeVal pv = PrimeVal::concrete(p);
        for (long m = 1; m <= 12; ++m) {
            IntMat g(1, 1);
            g.at(0, 0) = 2 * m;
            GramLattice lam(g);
            LaurentScalar got = apply_ttilde_j(tables, lam, p, 1, ctx).value;
            LaurentScalar want = a[m * p * p];
            if (m % p == 0)
                want += xpow(ctx, 1) * kpow(ctx, 1) * ppow(ctx, pv, -1) * a[m];
            if (m % (p * p) == 0)
                want += xpow(ctx, 2) * kpow(ctx, 2) * ppow(ctx, pv, -2) * a[m / (p * p)];
            CHECK(got == want);
        }
    }
}

TEST_CASE("apply_tp on a single-entry table matches the classical recursion") {
    ScalarContext ctx;
    TableSet tables;
    CoeffTable t1;
    t1.degree = 1;
    t1.entries.emplace_back(IntMat{{2}}, LaurentScalar::one());  // a_1 = 1, others 0
    tables.by_degree[1] = t1;
    // f|T(3) is supported on m = 3 with coefficient chi(3) 3^{k-1}
    LaurentScalar at6 = apply_tp(tables, GramLattice(IntMat{{6}}), 3, ctx).value;
    CHECK(at6 == xpow(ctx, 1) * kpow(ctx, 1) * rat(1, 3));
    CHECK(apply_tp(tables, GramLattice(IntMat{{2}}), 3, ctx).value.is_zero());
    CHECK(apply_tp(tables, GramLattice(IntMat{{18}}), 3, ctx).value.is_zero());
    // empty table stays empty
    TableSet none;
    none.by_degree[1] = CoeffTable{1, true, {}};
    CHECK(apply_tp(none, GramLattice(IntMat{{2}}), 3, ctx).value.is_zero());
}

TEST_CASE("degree-1 cross-validation against the recursion oracle") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> val(-20, 20);
    long p = 2;
    ScalarContext ctx;
    std::map<long, LaurentScalar> a;
    for (long m = 0; m <= 120; ++m) a[m] = rat(val(rng));
    TableSet tables;
    CoeffTable t1;
    t1.degree = 1;
    for (long m = 1; m <= 120; ++m) {
        IntMat g(1, 1);
        g.at(0, 0) = 2 * m;
        t1.entries.emplace_back(g, a[m]);
    }
    CoeffTable t0;
    t0.degree = 0;
    t0.entries.emplace_back(IntMat(0, 0), a[0]);
    tables.by_degree[1] = t1;
    tables.by_degree[0] = t0;
    for (long m = 1; m <= 30; ++m) {
        IntMat g(1, 1);
        g.at(0, 0) = 2 * m;
        CHECK(apply_tp(tables, GramLattice(g), p, ctx).value ==
              degree1_hecke_oracle(a, m, p, ctx));
    }
}

TEST_CASE("rank-deficient keys reduce through the radical") {
    ScalarContext ctx;
    TableSet tables;
    CoeffTable t1;
    t1.degree = 1;
    t1.entries.emplace_back(IntMat{{2}}, rat(7));
    tables.by_degree[1] = t1;
    // diag(2, 0): radical split lands on the degree-1 entry [2]
    LookupResult r = lookup_coefficient(tables, IntMat{{2, 0}, {0, 0}}, Integer(1));
    CHECK(r.value == rat(7));
    CHECK(!r.missing_degree);
    // degree-0 radical split with no degree-0 table supplied: 0 with warning
    LookupResult miss = lookup_coefficient(tables, IntMat(2, 2), Integer(1));
    CHECK(miss.value.is_zero());
    CHECK(miss.missing_degree);
    // non-integral form: plain zero, no warning
    LookupResult frac = lookup_coefficient(tables, IntMat{{1}}, Integer(2));
    CHECK(frac.value.is_zero());
    CHECK(!frac.missing_degree);
}

TEST_CASE("tilde/standard basis change round-trips to the identity") {
    for (int n = 1; n <= 4; ++n) {
        for (bool formal : {false, true}) {
            ScalarContext ctx;
            PrimeVal pv = formal ? PrimeVal::formal_symbol() : PrimeVal::concrete(3);
            auto m = tilde_from_standard(ctx, pv, n);
            auto inv = standard_from_tilde(ctx, pv, n);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    LaurentScalar forward, backward;
                    for (int t = 0; t <= n; ++t) {
                        forward += inv[i][t] * m[t][j];
                        backward += m[i][t] * inv[t][j];
                    }
                    LaurentScalar want = (i == j) ? LaurentScalar::one() : LaurentScalar::zero();
                    CHECK(forward == want);
                    CHECK(backward == want);
                }
        }
    }
}

TEST_CASE("tilde matrix at j = 0 and n = 1 match hand expansion") {
    ScalarContext ctx;
    PrimeVal pv = PrimeVal::formal_symbol();
    auto m = tilde_from_standard(ctx, pv, 1);
    // T~_0 = p^{n(n-k+1)} X^{-n} T_0 at n = 1
    CHECK(m[0][0] == LaurentScalar::monomial(ctx.P, 2) * kpow(ctx, -1) * xpow(ctx, -1));
    // T~_1 = T_1 + T_0 at n = 1
    CHECK(m[1][1] == LaurentScalar::one());
    CHECK(m[1][0] == LaurentScalar::one());
}

TEST_CASE("intertwining engines pass over the exhaustive small inventory") {
    std::vector<GramLattice> lats;
    lats.emplace_back(IntMat{{2}});
    lats.emplace_back(IntMat{{8}});
    lats.emplace_back(IntMat{{2, 1}, {1, 2}});
    lats.emplace_back(IntMat{{4, 0}, {0, 6}});
    for (long p : {2L, 3L})
        for (const auto& lp : lats) {
            CHECK(verify_intertwine_tp(lp, p).all_pass());
            for (int j = 1; j <= lp.rank() + 1; ++j)
                CHECK(verify_intertwine_ttilde(lp, p, j).all_pass());
            CHECK(verify_projection_classes(lp, p).all_pass());
        }
}

TEST_CASE("rank-0 base case: the single-lattice statement") {
    GramLattice empty(IntMat(0, 0));
    auto r = verify_intertwine_tp(empty, 2);
    CHECK(r.all_pass());
    CHECK(r.checks.size() == 2);  // one Omega' plus the coverage check
    CHECK(verify_intertwine_ttilde(empty, 2, 1).all_pass());
}

TEST_CASE("serial and parallel engine runs produce identical reports") {
    GramLattice lp(IntMat{{2, 1}, {1, 2}});
    for (long p : {2L, 3L}) {
        auto a = verify_intertwine_ttilde(lp, p, 2, ExecPolicy::Serial);
        auto b = verify_intertwine_ttilde(lp, p, 2, ExecPolicy::Parallel);
        REQUIRE(a.checks.size() == b.checks.size());
        for (size_t i = 0; i < a.checks.size(); ++i) {
            CHECK(a.checks[i].name == b.checks[i].name);
            CHECK(a.checks[i].pass == b.checks[i].pass);
            CHECK(a.checks[i].lhs == b.checks[i].lhs);
            CHECK(a.checks[i].rhs == b.checks[i].rhs);
        }
    }
}

TEST_CASE("coefficient derivation reproduces the closed forms") {
    for (int n = 1; n <= 5; ++n) {
        auto rep = derive_theorem1_from_proposition(n);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("verify_counts passes and includes the formal recomposition") {
    GramLattice l2(IntMat{{2, 0}, {0, 2}});
    for (long p : {2L, 3L}) CHECK(verify_counts(l2, p, 6).all_pass());
}

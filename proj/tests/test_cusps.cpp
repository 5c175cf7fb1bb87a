#include "siegel/cusps.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace siegel;

TEST_CASE("cusp tuples validate their parts") {
    CHECK_NOTHROW(CuspTuple(6, 2, {2, 3}));
    CHECK_THROWS_AS(CuspTuple(6, 2, {2, 2}), std::invalid_argument);   // not coprime
    CHECK_THROWS_AS(CuspTuple(6, 2, {4, 3}), std::invalid_argument);   // not a divisor
    CHECK_THROWS_AS(CuspTuple(12, 2, {1}), std::invalid_argument);     // N not squarefree
    CuspTuple c(6, 2, {2, 3});
    CHECK(c.l(0) == 1);
    CHECK(c.l(1) == 3);
    CHECK(c.l(2) == 2);
    CHECK(c.level() == 0);
}

TEST_CASE("cusp counts (n-r+1)^t") {
    for (long N : {1L, 2L, 6L, 30L}) {
        long t = (long)prime_divisors(N).size();
        for (int n = 1; n <= 4; ++n)
            for (int r = 0; r <= n; ++r) {
                long want = 1;
                for (long i = 0; i < t; ++i) want *= (n - r + 1);
                CHECK((long)enumerate_cusps(N, n, r).size() == want);
            }
    }
    CHECK_THROWS_AS(enumerate_cusps(12, 2, 1), std::invalid_argument);
    // spec examples
    CHECK(enumerate_cusps(6, 2, 1).size() == 4);
    CHECK(enumerate_cusps(1, 3, 1).size() == 1);
    CHECK(enumerate_cusps(30, 3, 0).size() == 64);
}

TEST_CASE("cusps above") {
    CuspTuple c23(6, 2, {2, 3});
    auto up = cusps_above(c23);
    REQUIRE(up.size() == 2);
    CHECK(up[0] == CuspTuple(6, 2, {2}));
    CHECK(up[1] == CuspTuple(6, 2, {6}));

    CuspTuple ones(6, 2, {1, 1});
    auto up1 = cusps_above(ones);
    REQUIRE(up1.size() == 1);
    CHECK(up1[0] == CuspTuple(6, 2, {1}));

    CuspTuple c121(2, 3, {1, 2, 1});
    CHECK(cusps_above(c121).size() == 2);

    CHECK_THROWS_AS(cusps_above(CuspTuple(6, 2, {2})), std::invalid_argument);
}

TEST_CASE("fiber counts over an (s+1)-cusp are 2^t") {
    for (long N : {6L, 30L}) {
        long t = (long)prime_divisors(N).size();
        int n = 3, s = 1;
        std::map<CuspTuple, long> fibers;
        for (const auto& c : enumerate_cusps(N, n, s))
            for (const auto& d : cusps_above(c)) fibers[d]++;
        long expect = 1 << t;
        CHECK((long)fibers.size() == (long)enumerate_cusps(N, n, s + 1).size());
        for (const auto& [d, k] : fibers) CHECK(k == expect);
    }
}

TEST_CASE("embedding formulas") {
    // trivial inner tuple leaves the outer cusp padded by ones
    CuspTuple outer(6, 3, {2, 3});
    CuspTuple inner_triv(6, 1, {});  // the interior of the degree-1 boundary
    // embed with inner at level = degree r returns outer itself
    CHECK(embed_cusp(outer, inner_triv) == outer);

    // spec example: n=2, outer (2) at level 1, inner 0-cusp (3) of degree 1
    CHECK(embed_cusp(CuspTuple(6, 2, {2}), CuspTuple(6, 1, {3})) == CuspTuple(6, 2, {2, 3}));

    // all-ones inner keeps the outer parts and fills with ones
    CuspTuple inner_ones(6, 2, {1, 1});
    CuspTuple big(6, 4, {2, 3});
    CHECK(embed_cusp(big, inner_ones) == CuspTuple(6, 4, {2, 3, 1, 1}));
}

TEST_CASE("embedding is consistent with cusps_above") {
    // every d above c comes from an inner (r-1)-cusp of the degree-r boundary
    for (long N : {6L, 30L})
        for (int n = 2; n <= 3; ++n)
            for (int s = 0; s + 1 < n; ++s)
                for (const auto& c : enumerate_cusps(N, n, s))
                    for (const auto& d : cusps_above(c)) {
                        bool found = false;
                        for (long m1 : divisors(N))
                            if (embed_cusp(d, CuspTuple(N, s + 1, {m1})) == c) {
                                found = true;
                                break;
                            }
                        CHECK(found);
                    }
}

TEST_CASE("no r-cusp self-intersects: embedding is injective") {
    for (long N : {6L, 30L})
        for (int n = 2; n <= 3; ++n)
            for (int r = 1; r < n; ++r)
                for (const auto& oc : enumerate_cusps(N, n, r))
                    for (int s = 0; s < r; ++s) {
                        std::set<std::string> seen;
                        for (const auto& ic : enumerate_cusps(N, r, s)) {
                            auto e = embed_cusp(oc, ic);
                            CHECK(!seen.count(e.to_string()));
                            seen.insert(e.to_string());
                        }
                    }
}

TEST_CASE("multiplicity identity") {
    auto r = verify_multiplicity(6, 2, 0);
    CHECK(r.all_pass());
    CHECK(r.checks[0].lhs == "16");
    CHECK(verify_multiplicity(1, 2, 0).checks[0].lhs == "1");  // t = 0
}

TEST_CASE("multiplicity closed form across levels") {
    for (long N : {1L, 2L, 6L, 30L})
        for (int n = 1; n <= 4; ++n)
            for (int s = 0; s < n; ++s) CHECK(verify_multiplicity(N, n, s).all_pass());
}

TEST_CASE("sl2 lift postconditions") {
    for (auto [l, m] : std::vector<std::pair<long, long>>{{1, 1}, {2, 3}, {3, 1}, {1, 6},
                                                          {5, 6}, {6, 5}, {30, 1}}) {
        IntMat g = sl2_crt_lift(l, m);
        CHECK(det(g) == 1);
        Integer l2 = Integer(l) * l, m2 = Integer(m) * m;
        // g = (a b; c d) with (0,-1;1,0) mod l^2 and identity mod m^2
        CHECK(mod_floor(g.at(0, 0), l2) == 0);
        CHECK(mod_floor(g.at(0, 1) + 1, l2) == 0);
        CHECK(mod_floor(g.at(1, 0) - 1, l2) == 0);
        CHECK(mod_floor(g.at(1, 1), l2) == 0);
        CHECK(mod_floor(g.at(0, 0) - 1, m2) == 0);
        CHECK(mod_floor(g.at(0, 1), m2) == 0);
        CHECK(mod_floor(g.at(1, 0), m2) == 0);
        CHECK(mod_floor(g.at(1, 1) - 1, m2) == 0);
    }
    CHECK_THROWS_AS(sl2_crt_lift(2, 4), std::invalid_argument);
}

TEST_CASE("representative matrices: symplectic, congruences, rank profile") {
    for (int n = 1; n <= 3; ++n) CHECK(verify_reps(6, n, 42).all_pass());
    CHECK(verify_reps(30, 2, 7).all_pass());

    // standard_rep of the all-ones tuple is 1 mod N^2
    CuspTuple ones(6, 2, {1, 1});
    SymplecticMatrix rep = standard_rep(ones);
    CHECK((rep.mat - IntMat::identity(4)).divisible_by(Integer(36)));

    // gamma(1) may be the identity
    SymplecticMatrix g1 = gamma_rep(6, 1, 2);
    CHECK((g1.mat - IntMat::identity(4)).divisible_by(Integer(36)));

    // the spec's worked example: N=6, (2,3): rk_3 = 1, rk_2 = 2
    CuspTuple c(6, 2, {2, 3});
    SymplecticMatrix r = standard_rep(c);
    CHECK(r.is_symplectic());
    IntMat c22 = r.block_c22(0);
    CHECK(fp_rank(FpMatrix::reduce(c22, 3)) == 1);
    CHECK(fp_rank(FpMatrix::reduce(c22, 2)) == 2);
}

TEST_CASE("kappa has similitude l and conjugation stability") {
    SymplecticMatrix k = kappa_rep(6, 3, 2);
    CHECK(k.mu == 3);
    CHECK(k.is_symplectic());
    CHECK(verify_reps(6, 2, 123).all_pass());
}

TEST_CASE("incidence poset shape") {
    CuspIncidence inc = cusp_incidence(1, 2);
    REQUIRE(inc.by_level.size() == 2);
    CHECK(inc.by_level[0].size() == 1);
    CHECK(inc.by_level[1].size() == 1);
    CHECK(inc.edges.size() == 1);

    CuspIncidence inc6 = cusp_incidence(6, 2);
    CHECK(inc6.by_level[0].size() == 9);
    CHECK(inc6.by_level[1].size() == 4);
    CHECK(inc6.edges.size() == 16);
}

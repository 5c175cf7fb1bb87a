#include "siegel/fpspaces.hpp"

#include <doctest.h>

using namespace siegel;

TEST_CASE("gaussian binomial values") {
    SymbolRegistry reg;
    SymbolId P = reg.intern("P");

    // (2 1)_p = p + 1
    LaurentScalar want = LaurentScalar::monomial(P, 1) + LaurentScalar::one();
    CHECK(gaussian_binomial_formal(2, 1, P) == want);
    CHECK(gaussian_binomial_int(2, 1, 2) == 3);

    // (4 2)_2 = 35, against the independent ordered-basis count
    Integer pairs = (Integer(16) - 1) * (Integer(16) - 2);
    Integer per_subspace = (Integer(4) - 1) * (Integer(4) - 2);
    CHECK(gaussian_binomial_int(4, 2, 2) == pairs / per_subspace);
    CHECK(gaussian_binomial_int(4, 2, 2) == 35);

    CHECK(gaussian_binomial_int(3, 5, 7) == 0);
    CHECK(gaussian_binomial_formal(3, 5, P).is_zero());
}

TEST_CASE("gaussian binomial symmetry as polynomials") {
    SymbolRegistry reg;
    SymbolId P = reg.intern("P");
    for (int n = 0; n <= 6; ++n)
        for (int r = 0; r <= n; ++r)
            CHECK(gaussian_binomial_formal(n, r, P) == gaussian_binomial_formal(n, n - r, P));
}

TEST_CASE("subspace enumeration counts match the product formula") {
    for (long p : {2L, 3L, 5L})
        for (int d = 0; d <= 4; ++d)
            for (int r = 0; r <= d; ++r) {
                auto subs = enumerate_subspaces(p, d, r);
                CHECK(Integer((long)subs.size()) == gaussian_binomial_int(d, r, p));
            }
    CHECK(enumerate_subspaces(2, 2, 1).size() == 3);
    CHECK(enumerate_subspaces(3, 3, 2).size() == 13);
    CHECK(enumerate_subspaces(2, 2, 0).size() == 1);
}

TEST_CASE("subspace enumeration is duplicate-free RREF") {
    auto subs = enumerate_subspaces(3, 4, 2);
    for (const auto& s : subs) CHECK(fp_rref(s) == s);
    std::vector<FpSubspace> sorted = subs;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("enumeration budget") {
    CHECK_THROWS_AS(enumerate_subspaces(5, 4, 2, 100), BudgetExceeded);
    try {
        enumerate_subspaces(5, 4, 2, 100);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required == gaussian_binomial_int(4, 2, 5));
    }
}

TEST_CASE("totally isotropic counts") {
    // hyperbolic plane over F_3: exactly the two null lines
    IntMat hyp{{0, 1}, {1, 0}};
    FpQuadSpace h3 = FpQuadSpace::from_even_gram(hyp, 3);
    CHECK(count_totally_isotropic(h3, 1) == 2);

    // zero form: everything isotropic
    FpQuadSpace z2 = FpQuadSpace::from_even_gram(IntMat(2, 2), 2);
    CHECK(count_totally_isotropic(z2, 0) == 1);
    CHECK(count_totally_isotropic(z2, 1) == 3);

    // Q(e) = 1 mod 3 on a line: nothing isotropic in codimension 0
    IntMat g1{{2}};
    FpQuadSpace s3 = FpQuadSpace::from_even_gram(g1, 3);
    CHECK(count_totally_isotropic(s3, 0) == 0);

    // negative codimension target
    CHECK(count_totally_isotropic(s3, -1) == 0);
    CHECK(count_totally_isotropic(s3, 2) == 0);
}

TEST_CASE("isotropic count bounded by subspace count") {
    for (long p : {2L, 3L}) {
        IntMat g{{2, 1, 0}, {1, 2, 0}, {0, 0, 4}};
        FpQuadSpace s = FpQuadSpace::from_even_gram(g, p);
        for (int codim = 0; codim <= 3; ++codim)
            CHECK(count_totally_isotropic(s, codim) <=
                  gaussian_binomial_int(3, 3 - codim, p));
    }
}

TEST_CASE("quadratic refinement at p = 2 uses the even diagonal") {
    // gram [[2]]: Q(e) = 1 mod 2, so no isotropic line; gram [[4]]: Q(e) = 0
    FpQuadSpace odd = FpQuadSpace::from_even_gram(IntMat{{2}}, 2);
    FpQuadSpace even = FpQuadSpace::from_even_gram(IntMat{{4}}, 2);
    CHECK(count_totally_isotropic(odd, 0) == 0);
    CHECK(count_totally_isotropic(even, 0) == 1);
}

TEST_CASE("fp rank") {
    FpMatrix id = FpMatrix::reduce(IntMat::identity(3), 5);
    CHECK(fp_rank(id) == 3);
    CHECK(fp_rank(FpMatrix(2, 2, 2)) == 0);
    CHECK(fp_rank(FpMatrix::reduce(IntMat{{2, 4}, {1, 2}}, 2)) == 1);
}

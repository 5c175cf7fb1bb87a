#pragma once

#include "siegel/intmatrix.hpp"
#include "siegel/laurent.hpp"

#include <cstdint>
#include <vector>

namespace siegel {

// Matrix over F_p, entries reduced into [0, p).
struct FpMatrix {
    long p = 2;
    int rows = 0, cols = 0;
    std::vector<long> a;

    FpMatrix() = default;
    FpMatrix(long p_, int r, int c) : p(p_), rows(r), cols(c), a((size_t)r * c, 0) {}
    long& at(int i, int j) { return a[(size_t)i * cols + j]; }
    long at(int i, int j) const { return a[(size_t)i * cols + j]; }

    static FpMatrix reduce(const IntMat& m, long p);
    bool operator==(const FpMatrix& o) const {
        return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator<(const FpMatrix& o) const { return a < o.a; }
};

long fp_inv(long x, long p);
int fp_rank(const FpMatrix& m);
// Reduced row echelon form (canonical representative of the row space).
FpMatrix fp_rref(const FpMatrix& m);

// A subspace of F_p^d, stored as an RREF basis matrix (rows = basis vectors).
// RREF is the canonical form: two subspaces are equal iff the matrices are.
using FpSubspace = FpMatrix;

// All subspaces of F_p^d of the given dimension, enumerated directly in RREF
// shape (choose pivot columns, then free entries); no dedup needed.
std::vector<FpSubspace> enumerate_subspaces(long p, int ambient_dim, int dim,
                                            std::uint64_t budget = 1000000);

struct BudgetExceeded : std::runtime_error {
    Integer required;
    explicit BudgetExceeded(const Integer& req)
        : std::runtime_error("enumeration budget exceeded; required " + req.str()),
          required(req) {}
};

// Quadratic space over F_p carried by an even integral Gram matrix T:
// bilinear form B = T mod p, and the quadratic refinement Q(e_i) = T_ii/2
// mod p (the characteristic-2-safe datum; for odd p it is gram_ii * inv(2)).
struct FpQuadSpace {
    long p = 2;
    int dim = 0;
    FpMatrix gram;            // dim x dim symmetric, B(e_i, e_j)
    std::vector<long> diagQ;  // Q(e_i)

    static FpQuadSpace from_even_gram(const IntMat& even_gram, long p);
    // Q on an arbitrary vector, expanded from the basis data:
    // Q(sum a_i e_i) = sum a_i^2 Q(e_i) + sum_{i<j} a_i a_j B(e_i, e_j).
    long q_value(const std::vector<long>& v) const;
};

// Vectors of the row space of an RREF basis (all p^rows combinations).
std::vector<std::vector<long>> subspace_vectors(const FpSubspace& basis);

// Number of subspaces of the given codimension on which Q vanishes
// identically (vector-wise check; brute force is the oracle by design).
Integer count_totally_isotropic(const FpQuadSpace& space, int codim,
                                std::uint64_t budget = 1000000);

// Gaussian binomial (n r)_p as an exact scalar. With a concrete prime this is
// the integer value; with the formal symbol it is a polynomial in that symbol
// (computed through the Pascal recursion, no division).
LaurentScalar gaussian_binomial(int n, int r, long p);
LaurentScalar gaussian_binomial_formal(int n, int r, SymbolId p_symbol);
Integer gaussian_binomial_int(int n, int r, long p);

}  // namespace siegel

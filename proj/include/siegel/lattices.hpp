#pragma once

#include "siegel/fpspaces.hpp"
#include "siegel/intmatrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace siegel {

// Rank-n lattice fixed to the basis x_1..x_n, carrying an even positive
// semidefinite Gram matrix T (off-diagonal integral, diagonal even), so that
// Q(x) = (1/2) x^t T x is Z-valued.
class GramLattice {
public:
    GramLattice() : n_(0), gram_(0, 0) {}
    explicit GramLattice(IntMat gram, bool check_psd = true);

    int rank() const { return n_; }
    const IntMat& gram() const { return gram_; }

    bool operator==(const GramLattice& o) const { return gram_ == o.gram_; }
    bool operator<(const GramLattice& o) const { return gram_ < o.gram_; }

private:
    int n_;
    IntMat gram_;
};

bool is_even_gram(const IntMat& t);
// Exact PSD test: every principal minor is >= 0.
bool is_positive_semidefinite(const IntMat& t);
// Sylvester: every leading principal minor is > 0.
bool is_positive_definite(const IntMat& t);

// Elementary-divisor signature of a sublattice: Omega = p^{-1}L0 + L1 + pL2
// with (m0, m1, m2) = ranks. In the T(p) situation (Omega inside Lambda) the
// paper's two-part p-type (m0, m1) is stored with m2 = 0.
struct PType {
    int m0 = 0, m1 = 0, m2 = 0;
    bool operator==(const PType& o) const { return m0 == o.m0 && m1 == o.m1 && m2 == o.m2; }
    bool operator<(const PType& o) const {
        if (m0 != o.m0) return m0 < o.m0;
        if (m1 != o.m1) return m1 < o.m1;
        return m2 < o.m2;
    }
};

// A lattice Omega with pL <= Omega <= p^{-1}L for an ambient L, stored by the
// integer matrix S = p * basis in canonical column HNF; so S's columns are a
// basis of p*Omega in L-coordinates, with p^2 L <= S Z^n <= L.
class Sublattice {
public:
    Sublattice(GramLattice ambient, long p, const IntMat& scaled_basis_generators);

    const GramLattice& ambient() const { return ambient_; }
    long p() const { return p_; }
    // S = p * basis, canonical column HNF
    const IntMat& scaled_basis() const { return s_; }

    bool operator==(const Sublattice& o) const { return p_ == o.p_ && s_ == o.s_; }
    bool operator<(const Sublattice& o) const { return s_ < o.s_; }

    // Wide p-type (m0, m1, m2) per the invariant-factor decomposition.
    PType ptype_wide() const;
    // Two-part p-type for Omega <= Lambda; throws if Omega is not inside Lambda.
    PType ptype_narrow() const;

    bool contained_in_ambient() const;  // Omega <= Lambda
    // Induced Gram: basis^t T basis = num / den with num = S^t T S, den = p^2.
    IntMat induced_gram_num() const { return s_.transpose() * ambient_.gram() * s_; }
    Integer induced_gram_den() const { return Integer(p_) * p_; }

    // Invariant-factor middle block: basis of a complement Lambda_1 with
    // Lambda = L0 + L1 + L2 adapted to Omega, plus the even Gram on it.
    // The choice is not unique; counts derived from it are.
    IntMat middle_block_basis() const;

    std::string key() const;  // canonical string key (HNF entries)

private:
    GramLattice ambient_;
    long p_;
    IntMat s_;
};

// a(Lambda; F) vanishes unless the quadratic form is even integral; this
// tests num/den for integrality with even diagonal.
bool is_even_integral(const IntMat& num, const Integer& den);

enum class BetweenMode { NarrowTp, WideTilde };  // pL..L vs pL..p^{-1}L

// Complete duplicate-free enumeration via the two-step subspace
// parameterisation (choose a subspace of L/pL, then one of D1/pD1 independent
// of the image of pL). Sorted canonically.
std::vector<Sublattice> enumerate_between(const GramLattice& lat, long p, BetweenMode mode,
                                          std::uint64_t budget = 1000000);

// Independent oracle: direct enumeration of all subgroups of (Z/p^2)^n by
// scanning column-HNF candidates. Used to cross-check enumerate_between.
std::vector<Sublattice> enumerate_between_direct(const GramLattice& lat, long p,
                                                 BetweenMode mode,
                                                 std::uint64_t budget = 1000000);

// Expected count of wide sublattices of p-type (t, s-t, n-s).
Integer ptype_count_formula(int n, int s, int t, long p);

// rank-(n-1) lattice obtained by dropping x_n; requires the ambient Gram to
// be diag(T', 0) (x_n in the radical).
Sublattice project_drop_last(const Sublattice& om);
GramLattice projected_ambient(const GramLattice& lat);

// Lambda' (+) Z x_n with the form extended by zero.
GramLattice extend_by_zero(const GramLattice& lat);

// Whole lattice / p-scaled copies as Sublattices of lat.
Sublattice whole_lattice(const GramLattice& lat, long p);
Sublattice scaled_lattice(const GramLattice& lat, long p, int power);  // p^power * Lambda

// Isometry test over Z for positive definite even Gram matrices at desk
// scale: exists G in GL_n(Z) with G^t T1 G = T2. Backtracking over vectors of
// the correct norms.
bool gram_equivalent(const IntMat& t1, const IntMat& t2, int max_rank = 4,
                     long max_entry = 512);

// All x with x^t T x = value, T positive definite (coordinate box bounded by
// the exact inverse diagonal).
std::vector<std::vector<Integer>> vectors_of_norm(const IntMat& t, const Integer& value);

}  // namespace siegel

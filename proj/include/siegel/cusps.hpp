#pragma once

#include "siegel/hecke.hpp"
#include "siegel/intmatrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace siegel {

// An r-cusp of degree n, squarefree level N: the tuple (l_{n-r}, ..., l_1) of
// pairwise coprime positive divisors of N, with l_0 = N / prod(parts).
class CuspTuple {
public:
    CuspTuple(long N, int degree, std::vector<long> parts_top_down);

    long level_N() const { return N_; }
    int degree() const { return degree_; }
    int level() const { return degree_ - (int)parts_.size(); }
    // l_i for 0 <= i <= n-r (l_0 included).
    long l(int i) const;
    const std::vector<long>& parts() const { return parts_; }  // (l_{n-r}, ..., l_1)

    bool operator==(const CuspTuple& o) const {
        return N_ == o.N_ && degree_ == o.degree_ && parts_ == o.parts_;
    }
    bool operator<(const CuspTuple& o) const { return parts_ < o.parts_; }
    std::string to_string() const;

private:
    long N_;
    int degree_;
    std::vector<long> parts_;
};

bool is_squarefree(long n);
std::vector<long> prime_divisors(long n);
std::vector<long> divisors(long n);

// All r-cusps of degree n; count (n - r + 1)^omega(N).
std::vector<CuspTuple> enumerate_cusps(long N, int n, int r);

// The (s+1)-cusps on which an s-cusp lies: tuples
// (l_{n-s} c_{n-s-1}, (l_{n-s-1}/c_{n-s-1}) c_{n-s-2}, ..., (l_2/c_2) c_1)
// over all c_i | l_i. Rejects s = n-1 (the unique component above is the
// interior, not a cusp).
std::vector<CuspTuple> cusps_above(const CuspTuple& c);

// Composition of boundary embeddings: an s-cusp `inner` of the degree-r
// compactification sitting inside the degree-n one through the r-cusp
// `outer`, expressed in the degree-n atlas via the gcd product formulas.
CuspTuple embed_cusp(const CuspTuple& outer, const CuspTuple& inner);

// Counts s-cusps with multiplicity (once per (s+1)-component above) two ways
// and against the closed form 2^t (n-s)^t.
VerifyReport verify_multiplicity(long N, int n, int s);

// det-1 integer matrix congruent to (0,-1;1,0) mod l^2 and to 1 mod m^2.
IntMat sl2_crt_lift(long l, long m);

struct SymplecticMatrix {
    IntMat mat;      // 2m x 2m
    Integer mu = 1;  // similitude

    int half_size() const { return mat.rows() / 2; }
    IntMat block_a() const;
    IntMat block_b() const;
    IntMat block_c() const;
    IntMat block_d() const;
    // lower-right (m - r) x (m - r) corner of C
    IntMat block_c22(int r) const;
    bool is_symplectic() const;  // g^t J g = mu J
};

// gamma^{(r)}(l): scalar-block embedding of sl2_crt_lift(l, N/l) into Sp_2r.
SymplecticMatrix gamma_rep(long N, long l, int r);
// kappa^{(n)}(l) = diag(1_n, l 1_n) * gamma^{(n)}(l), similitude l.
SymplecticMatrix kappa_rep(long N, long l, int n);
// xi_{r,n}: Sp_2r -> P_{n,r} block embedding.
SymplecticMatrix xi_embed(const SymplecticMatrix& g, int n);
// gamma^{(n)}(l_{n-r}) xi(gamma^{(n-1)}(l_{n-r-1})) ... xi(gamma^{(r+1)}(l_1)).
SymplecticMatrix standard_rep(const CuspTuple& c);

// The coset invariant: {p | l_i} = {p : rk_p(C22) = i}, i = 0 included.
bool rank_profile_matches(const CuspTuple& c, const SymplecticMatrix& rep);

// Representative-matrix suite: symplectic, defining congruences, rank
// profile, and kappa-conjugation stability against seeded random elements
// of Gamma_0(N).
VerifyReport verify_reps(long N, int n, std::uint64_t seed,
                         ExecPolicy pol = ExecPolicy::Parallel);

// lies-on incidence between levels s and s+1 for 0 <= s <= n-2.
struct CuspIncidence {
    std::vector<std::vector<CuspTuple>> by_level;           // level 0..n-1
    std::vector<std::pair<std::pair<int, size_t>, size_t>> edges;  // ((level s, idx), idx above)
};
CuspIncidence cusp_incidence(long N, int n);

}  // namespace siegel

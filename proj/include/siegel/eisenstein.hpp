#pragma once

#include "siegel/cusps.hpp"
#include "siegel/hecke.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace siegel {

// chi = prod_{q | N} chi_q^{e_q} with e_q in {+1, -1}, kept formal: the value
// chi(p^a) becomes the monomial prod X_q^{a e_q}. Concrete character values
// only enter through evaluation bindings.
class CharacterProduct {
public:
    explicit CharacterProduct(long N);  // trivial character mod N

    long modulus() const { return N_; }
    int exponent(long q) const { return exps_.at(q); }

    CharacterProduct conj() const;
    // sub-product over primes dividing l
    CharacterProduct restrict_to(long l) const;
    // psi |-> conj(psi_l) * psi_{N/l}
    CharacterProduct step(long l) const;

    // chi(p^a) as a Laurent monomial in the X_q symbols.
    LaurentScalar at_p_power(ScalarContext& ctx, long a) const;
    // restriction chi_l(p^a)
    LaurentScalar part_at_p_power(ScalarContext& ctx, long l, long a) const;

    std::string to_string() const;

private:
    long N_;
    std::map<long, int> exps_;
};

std::pair<CharacterProduct, CharacterProduct> character_split(const CharacterProduct& chi,
                                                              long l);

// chi(p^a) for the hecke closed forms, with the character's own symbols.
ChiPow chi_pow_of(ScalarContext& ctx, const CharacterProduct& chi);

// lambda_0^{(1)}(p^2, psi) = psi(p) K p^{-3} and
// lambda_1^{(1)}(p^2, psi) = L^2 - (1 + conj(psi)(p) K p^{-1}) lambda_0.
struct Degree1Base {
    LaurentScalar lambda0;
    LaurentScalar lambda1;
};
Degree1Base base_degree1_lambdas(ScalarContext& ctx, long p, const CharacterProduct& psi);

// Twisted intertwining factors of the arbitrary-cusp relations:
// chi_{l1}(p^n) c^{(n-1)}(conj(chi_{l1}) chi_{l0})  and the T_j triple with
// the stepped character substituted.
LaurentScalar twisted_coeff_tp(ScalarContext& ctx, long p, int n, long l1,
                               const CharacterProduct& chi);
std::vector<LaurentScalar> twisted_coeffs_tj(ScalarContext& ctx, long p, int n, int j, long l1,
                                             const CharacterProduct& chi);

// lambda^{(n)}(p, chi) of the Klingen lift from the r-cusp `cusp`:
// lambda^{(r)} * prod_{t=r+1}^{n} psi_{t, l_{t-r}}(p^t) c^{(t-1)}(psi_{t-1})
// with psi_n = chi and psi_{t-1} = step(psi_t, l_{t-r}). The base eigenvalue
// is the symbol L (or the constant 1 when r = 0).
LaurentScalar lift_eigenvalue_tp(ScalarContext& ctx, long p, int n, int r,
                                 const CuspTuple& cusp, const CharacterProduct& chi);

// lambda_j^{(n)}(p^2, chi) through the theta recursion; base eigenvalues are
// the symbols L_0..L_r (for r = 0 the constant 1 at index 0).
LaurentScalar lift_eigenvalue_tj(ScalarContext& ctx, long p, int n, int r, int j,
                                 const CuspTuple& cusp, const CharacterProduct& chi);

// Indices of the base-eigenvalue symbols an expression actually uses.
std::vector<int> required_base_indices(const ScalarContext& ctx, const LaurentScalar& expr,
                                       int r);

// Concrete evaluation: K |-> p^k, X_q |-> chi_q(p), L symbols from the
// supplied values. p must not divide N.
struct EigenvalueBindings {
    long k = 0;
    std::map<long, SymbolBinding> chi_values;       // q -> chi_q(p)
    std::optional<Rational> lambda_tp;              // binds L
    std::map<int, Rational> lambda_tj;              // binds L_i
};
std::optional<Rational> evaluate_eigenvalue_rational(ScalarContext& ctx,
                                                     const LaurentScalar& expr, long p, long N,
                                                     const EigenvalueBindings& b);
std::complex<double> evaluate_eigenvalue_complex(ScalarContext& ctx, const LaurentScalar& expr,
                                                 long p, long N, const EigenvalueBindings& b);

// sigma_{k-1}(m), the classical degree-1 Eisenstein eigenvalue oracle.
Integer sigma_power_sum(long m, long k_minus_1);

}  // namespace siegel

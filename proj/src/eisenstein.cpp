#include "siegel/eisenstein.hpp"

#include <numeric>
#include <sstream>

namespace siegel {

CharacterProduct::CharacterProduct(long N) : N_(N) {
    if (!is_squarefree(N)) throw std::invalid_argument("CharacterProduct: N not squarefree");
    for (long q : prime_divisors(N)) exps_[q] = 1;
}

CharacterProduct CharacterProduct::conj() const {
    CharacterProduct out = *this;
    for (auto& [q, e] : out.exps_) e = -e;
    return out;
}

CharacterProduct CharacterProduct::restrict_to(long l) const {
    if (l <= 0 || N_ % l != 0) throw std::invalid_argument("character restriction: l must divide N");
    CharacterProduct out = *this;
    for (auto& [q, e] : out.exps_)
        if (l % q != 0) e = 0;
    return out;
}

CharacterProduct CharacterProduct::step(long l) const {
    if (l <= 0 || N_ % l != 0) throw std::invalid_argument("character step: l must divide N");
    CharacterProduct out = *this;
    for (auto& [q, e] : out.exps_)
        if (l % q == 0) e = -e;
    return out;
}

LaurentScalar CharacterProduct::at_p_power(ScalarContext& ctx, long a) const {
    LaurentScalar out = LaurentScalar::one();
    for (const auto& [q, e] : exps_)
        if (e != 0) out *= LaurentScalar::monomial(ctx.X_q(q), (int)(a * e));
    return out;
}

LaurentScalar CharacterProduct::part_at_p_power(ScalarContext& ctx, long l, long a) const {
    return restrict_to(l).at_p_power(ctx, a);
}

std::string CharacterProduct::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (const auto& [q, e] : exps_) {
        if (e == 0) continue;
        if (any) os << "*";
        os << (e == 1 ? "chi_" : "conj(chi)_") << q;
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

std::pair<CharacterProduct, CharacterProduct> character_split(const CharacterProduct& chi,
                                                              long l) {
    return {chi.restrict_to(l), chi.restrict_to(chi.modulus() / l)};
}

ChiPow chi_pow_of(ScalarContext& ctx, const CharacterProduct& chi) {
    // pre-intern the X_q symbols so the closure is registry-free
    CharacterProduct copy = chi;
    for (long q : prime_divisors(chi.modulus())) (void)ctx.X_q(q);
    ScalarContext* c = &ctx;
    return [c, copy](long a) { return copy.at_p_power(*c, a); };
}

Degree1Base base_degree1_lambdas(ScalarContext& ctx, long p, const CharacterProduct& psi) {
    PrimeVal pv = PrimeVal::concrete(p);
    Degree1Base out;
    out.lambda0 = psi.at_p_power(ctx, 1) * LaurentScalar::monomial(ctx.K, 1) * ppow(ctx, pv, -3);
    LaurentScalar lsym = LaurentScalar::monomial(ctx.L, 1);
    out.lambda1 = lsym * lsym -
                  (LaurentScalar::one() + psi.conj().at_p_power(ctx, 1) *
                                              LaurentScalar::monomial(ctx.K, 1) * ppow(ctx, pv, -1)) *
                      out.lambda0;
    return out;
}

LaurentScalar twisted_coeff_tp(ScalarContext& ctx, long p, int n, long l1,
                               const CharacterProduct& chi) {
    CharacterProduct stepped = chi.step(l1);
    return chi.part_at_p_power(ctx, l1, n) *
           c_tp(ctx, PrimeVal::concrete(p), chi_pow_of(ctx, stepped), n);
}

std::vector<LaurentScalar> twisted_coeffs_tj(ScalarContext& ctx, long p, int n, int j, long l1,
                                             const CharacterProduct& chi) {
    CharacterProduct stepped = chi.step(l1);
    ChiPow cp = chi_pow_of(ctx, stepped);
    LaurentScalar outer = chi.part_at_p_power(ctx, l1, 2L * n);
    std::vector<LaurentScalar> out;
    for (int s = j; s >= j - 2; --s)
        out.push_back(outer * c_tj(ctx, PrimeVal::concrete(p), cp, n, j, s));
    return out;
}

LaurentScalar lift_eigenvalue_tp(ScalarContext& ctx, long p, int n, int r,
                                 const CuspTuple& cusp, const CharacterProduct& chi) {
    if (r < 0 || r >= n) throw std::invalid_argument("lift_eigenvalue_tp: need 0 <= r < n");
    if (cusp.degree() != n || cusp.level() != r)
        throw std::invalid_argument("lift_eigenvalue_tp: cusp arity mismatch");
    PrimeVal pv = PrimeVal::concrete(p);
    LaurentScalar out =
        (r == 0) ? LaurentScalar::one() : LaurentScalar::monomial(ctx.L, 1);
    CharacterProduct psi = chi;  // psi_t, walking t = n down to r+1
    for (int t = n; t >= r + 1; --t) {
        long part = cusp.l(t - r);
        CharacterProduct stepped = psi.step(part);
        out *= psi.part_at_p_power(ctx, part, t) *
               c_tp(ctx, pv, chi_pow_of(ctx, stepped), t);
        psi = stepped;
    }
    return out;
}

LaurentScalar lift_eigenvalue_tj(ScalarContext& ctx, long p, int n, int r, int j,
                                 const CuspTuple& cusp, const CharacterProduct& chi) {
    if (r < 0 || r >= n) throw std::invalid_argument("lift_eigenvalue_tj: need 0 <= r < n");
    if (j < 0 || j > n) throw std::invalid_argument("lift_eigenvalue_tj: need 0 <= j <= n");
    if (cusp.degree() != n || cusp.level() != r)
        throw std::invalid_argument("lift_eigenvalue_tj: cusp arity mismatch");
    PrimeVal pv = PrimeVal::concrete(p);

    // pre-intern base symbols (closure below must not touch the registry)
    for (int i = 0; i <= r; ++i) (void)ctx.L_index(i);

    // theta(m, i): characters are determined by the level, so memoising on
    // (m, i) is enough; the fingerprint is kept in the key for clarity.
    std::map<std::pair<int, int>, LaurentScalar> memo;
    std::vector<CharacterProduct> psi_at;  // psi_m for m = r..n
    psi_at.assign((size_t)(n - r + 1), chi);
    psi_at[(size_t)(n - r)] = chi;
    for (int m = n; m > r; --m)
        psi_at[(size_t)(m - 1 - r)] = psi_at[(size_t)(m - r)].step(cusp.l(m - r));

    std::function<LaurentScalar(int, int)> lambda_at = [&](int m, int i) -> LaurentScalar {
        if (m == r) {
            if (r == 0) return (i == 0) ? LaurentScalar::one() : LaurentScalar::zero();
            if (i < 0 || i > r) return LaurentScalar::zero();
            return LaurentScalar::monomial(ctx.L_index(i), 1);
        }
        auto key = std::make_pair(m, i);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const CharacterProduct& psi = psi_at[(size_t)(m - r)];
        const CharacterProduct& stepped = psi_at[(size_t)(m - 1 - r)];
        ChiPow cp = chi_pow_of(ctx, stepped);
        LaurentScalar acc;
        for (int d = 0; d <= 2; ++d) {
            int kk = i - d;
            LaurentScalar coeff = c_tj(ctx, pv, cp, m, i, kk);
            if (coeff.is_zero()) continue;
            acc += coeff * lambda_at(m - 1, kk);
        }
        LaurentScalar out = psi.part_at_p_power(ctx, cusp.l(m - r), 2L * m) * acc;
        memo.emplace(key, out);
        return out;
    };
    return lambda_at(n, j);
}

std::vector<int> required_base_indices(const ScalarContext& ctx, const LaurentScalar& expr,
                                       int r) {
    std::vector<int> out;
    for (int i = 0; i <= r; ++i) {
        auto id = ctx.reg.find("L_" + std::to_string(i));
        if (!id) continue;
        for (const auto& [e, c] : expr.terms())
            for (const auto& [sym, ex] : e)
                if (sym == *id) {
                    out.push_back(i);
                    goto next;
                }
    next:;
    }
    return out;
}

namespace {

BindingMap build_bindings(ScalarContext& ctx, long p, long N, const EigenvalueBindings& b) {
    if (N % p == 0) throw std::domain_error("bad prime for eigenvalue evaluation");
    BindingMap out;
    out[ctx.K] = SymbolBinding::of(rat_pow(Rational(p), b.k));
    for (long q : prime_divisors(N)) {
        auto it = b.chi_values.find(q);
        out[ctx.X_q(q)] = (it != b.chi_values.end()) ? it->second
                                                     : SymbolBinding::of(Rational(1));
    }
    if (b.lambda_tp) out[ctx.L] = SymbolBinding::of(*b.lambda_tp);
    for (const auto& [i, v] : b.lambda_tj) out[ctx.L_index(i)] = SymbolBinding::of(v);
    return out;
}

}  // namespace

std::optional<Rational> evaluate_eigenvalue_rational(ScalarContext& ctx,
                                                     const LaurentScalar& expr, long p, long N,
                                                     const EigenvalueBindings& b) {
    return evaluate_rational(expr, build_bindings(ctx, p, N, b), ctx.reg);
}

std::complex<double> evaluate_eigenvalue_complex(ScalarContext& ctx, const LaurentScalar& expr,
                                                 long p, long N, const EigenvalueBindings& b) {
    return evaluate_complex(expr, build_bindings(ctx, p, N, b), ctx.reg);
}

Integer sigma_power_sum(long m, long e) {
    Integer total = 0;
    for (long d = 1; d <= m; ++d)
        if (m % d == 0) total += int_pow(Integer(d), (unsigned long)e);
    return total;
}

}  // namespace siegel

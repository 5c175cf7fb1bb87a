#include "siegel/hecke.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace siegel {

LaurentScalar ppow(const ScalarContext& ctx, const PrimeVal& pv, long e) {
    if (pv.formal) return LaurentScalar::monomial(ctx.P, (int)e);
    return LaurentScalar::from_rational(rat_pow(Rational(pv.value), e));
}

ChiPow chi_plain(const ScalarContext& ctx) {
    SymbolId x = ctx.X;
    return [x](long a) { return LaurentScalar::monomial(x, (int)a); };
}

static LaurentScalar gb(const ScalarContext& ctx, const PrimeVal& pv, int n, int r) {
    if (pv.formal) return gaussian_binomial_formal(n, r, ctx.P);
    return gaussian_binomial(n, r, pv.value);
}

LaurentScalar exponent_E(const ScalarContext& ctx, const PrimeVal& pv, const PType& t, int n) {
    if (t.m2 != 0) throw std::invalid_argument("exponent_E: expects a two-part p-type");
    long e = (long)t.m1 * (t.m1 + 1) / 2 - (long)n * (n + 1) / 2;
    return LaurentScalar::monomial(ctx.K, t.m0) * ppow(ctx, pv, e);
}

LaurentScalar exponent_Ej(const ScalarContext& ctx, const PrimeVal& pv, const PType& t, int n,
                          int j) {
    long u = (long)t.m1 - n + j;
    long e = (long)t.m2 * (t.m2 + t.m1 + 1) + u * (u + 1) / 2 - (long)j * (n + 1);
    return LaurentScalar::monomial(ctx.K, t.m0 - t.m2 + j) * ppow(ctx, pv, e);
}

Integer alpha_isotropic(const Sublattice& om, int deg, int idx, std::uint64_t budget) {
    int codim = deg - idx;
    if (codim < 0) return 0;
    IntMat f1 = om.middle_block_basis();
    IntMat gram1 = f1.transpose() * om.ambient().gram() * f1;
    FpQuadSpace space = FpQuadSpace::from_even_gram(gram1, om.p());
    return count_totally_isotropic(space, codim, budget);
}

Integer alpha_isotropic_randomized(const Sublattice& om, int deg, int idx, std::uint64_t seed) {
    int n = om.ambient().rank();
    std::mt19937_64 rng(seed);
    IntMat w = IntMat::identity(n);
    std::uniform_int_distribution<int> pick(0, n - 1), val(-2, 2);
    // random unimodular ambient change: a handful of shears and swaps
    for (int step = 0; step < 6 * n; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        IntMat e = IntMat::identity(n);
        e.at(i, j) = val(rng);
        w = w * e;
    }
    IntMat winv = adjugate(w);
    Integer dw = det(w);
    if (dw == -1) winv = winv.scaled(Integer(-1));
    GramLattice amb2(w.transpose() * om.ambient().gram() * w, false);
    Sublattice om2(amb2, om.p(), winv * om.scaled_basis());
    return alpha_isotropic(om2, deg, idx);
}

LaurentScalar c_tp(const ScalarContext& ctx, const PrimeVal& pv, const ChiPow& chi, int n) {
    return LaurentScalar::one() +
           chi(1) * LaurentScalar::monomial(ctx.K, 1) * ppow(ctx, pv, -n);
}

LaurentScalar c_tj(const ScalarContext& ctx, const PrimeVal& pv, const ChiPow& chi, int n,
                   int j, int s) {
    if (s < 0 || s > n - 1 || s > j || s < j - 2) return LaurentScalar::zero();
    LaurentScalar K1 = LaurentScalar::monomial(ctx.K, 1);
    LaurentScalar K2 = LaurentScalar::monomial(ctx.K, 2);
    if (s == j) return chi(1) * K1 * ppow(ctx, pv, j - 2 * n);
    if (s == j - 1)
        return chi(2) * K2 * ppow(ctx, pv, -2 * n) +
               chi(1) * (K1 * ppow(ctx, pv, j - 2 * n) - K1 * ppow(ctx, pv, j - 2 * n - 1)) +
               LaurentScalar::one();
    return chi(1) * (K1 * ppow(ctx, pv, -j + 1) - K1 * ppow(ctx, pv, j - 2 * n - 1));
}

LaurentScalar ctilde(const ScalarContext& ctx, const PrimeVal& pv, const ChiPow& chi, int n,
                     int j, int s) {
    if (s < 0 || s > n - 1) return LaurentScalar::zero();
    LaurentScalar K1 = LaurentScalar::monomial(ctx.K, 1);
    LaurentScalar K2 = LaurentScalar::monomial(ctx.K, 2);
    if (s == j) return LaurentScalar::one();
    if (s == j - 1)
        return chi(2) * K2 * ppow(ctx, pv, -j - n) + chi(1) * K1 * ppow(ctx, pv, -n) +
               ppow(ctx, pv, n - j);
    if (s == j - 2)
        return chi(2) * (K2 * ppow(ctx, pv, -2 * j + 1) - K2 * ppow(ctx, pv, -n - j));
    return LaurentScalar::zero();
}

std::vector<std::vector<LaurentScalar>> tilde_from_standard(const ScalarContext& ctx,
                                                            const PrimeVal& pv, int n) {
    // F|T~_j = p^{(n-j)(n-k+1)} chibar(p^{n-j}) sum_t (n-t | j-t)_p F|T_t
    std::vector<std::vector<LaurentScalar>> m((size_t)n + 1,
                                              std::vector<LaurentScalar>((size_t)n + 1));
    for (int j = 0; j <= n; ++j) {
        LaurentScalar pref = ppow(ctx, pv, (long)(n - j) * (n + 1)) *
                             LaurentScalar::monomial(ctx.K, -(n - j)) *
                             LaurentScalar::monomial(ctx.X, -(n - j));
        for (int t = 0; t <= j; ++t) m[j][t] = pref * gb(ctx, pv, n - t, j - t);
    }
    return m;
}

std::vector<std::vector<LaurentScalar>> standard_from_tilde(const ScalarContext& ctx,
                                                            const PrimeVal& pv, int n) {
    auto m = tilde_from_standard(ctx, pv, n);
    std::vector<std::vector<LaurentScalar>> inv((size_t)n + 1,
                                                std::vector<LaurentScalar>((size_t)n + 1));
    for (int j = 0; j <= n; ++j) {
        inv[j][j] = m[j][j].invert_monomial();
        for (int s = j - 1; s >= 0; --s) {
            LaurentScalar acc;
            for (int t = s + 1; t <= j; ++t) acc += inv[j][t] * m[t][s];
            inv[j][s] = -(acc * m[s][s].invert_monomial());
        }
    }
    return inv;
}

// --- tables -----------------------------------------------------------------

LookupResult lookup_coefficient(const TableSet& tables, const IntMat& num, const Integer& den) {
    LookupResult out;
    if (!is_even_integral(num, den)) return out;
    IntMat g = num.divided_by(den);
    int n = g.rows();
    int r = rank_rational(g);
    IntMat reduced = g;
    if (r < n) {
        KernelSplit ks = kernel_split(g);
        reduced = ks.complement.transpose() * g * ks.complement;
    }
    auto it = tables.by_degree.find(r);
    if (it == tables.by_degree.end()) {
        out.missing_degree = true;
        return out;
    }
    for (const auto& [key, value] : it->second.entries)
        if (gram_equivalent(key, reduced)) {
            out.value = value;
            return out;
        }
    if (!it->second.default_zero)
        throw std::domain_error("coefficient table miss with default_zero=false");
    return out;
}

ApplyResult apply_tp(const TableSet& tables, const GramLattice& lam, long p, ScalarContext& ctx,
                     std::uint64_t budget) {
    ApplyResult out;
    int n = lam.rank();
    PrimeVal pv = PrimeVal::concrete(p);
    ChiPow chi = chi_plain(ctx);
    Integer p3 = Integer(p) * p * p;
    for (const Sublattice& om : enumerate_between(lam, p, BetweenMode::NarrowTp, budget)) {
        PType t = om.ptype_narrow();
        LookupResult lr = lookup_coefficient(tables, om.induced_gram_num(), p3);
        out.missing_degree = out.missing_degree || lr.missing_degree;
        if (lr.value.is_zero()) continue;
        out.value += chi(t.m0) * exponent_E(ctx, pv, t, n) * lr.value;
    }
    return out;
}

ApplyResult apply_ttilde_j(const TableSet& tables, const GramLattice& lam, long p, int j,
                           ScalarContext& ctx, std::uint64_t budget) {
    ApplyResult out;
    int n = lam.rank();
    PrimeVal pv = PrimeVal::concrete(p);
    ChiPow chi = chi_plain(ctx);
    Integer p2 = Integer(p) * p;
    for (const Sublattice& om : enumerate_between(lam, p, BetweenMode::WideTilde, budget)) {
        Integer alpha = alpha_isotropic(om, n, j, budget);
        if (alpha == 0) continue;
        PType t = om.ptype_wide();
        LookupResult lr = lookup_coefficient(tables, om.induced_gram_num(), p2);
        out.missing_degree = out.missing_degree || lr.missing_degree;
        if (lr.value.is_zero()) continue;
        out.value += chi(j - n + 2 * t.m0 + t.m1) * exponent_Ej(ctx, pv, t, n, j) *
                     LaurentScalar::from_rational(Rational(alpha)) * lr.value;
    }
    return out;
}

ApplyResult apply_tj(const TableSet& tables, const GramLattice& lam, long p, int j,
                     ScalarContext& ctx, std::uint64_t budget) {
    ApplyResult out;
    int n = lam.rank();
    auto inv = standard_from_tilde(ctx, PrimeVal::concrete(p), n);
    for (int t = 0; t <= j; ++t) {
        if (inv[j][t].is_zero()) continue;
        ApplyResult part = apply_ttilde_j(tables, lam, p, t, ctx, budget);
        out.missing_degree = out.missing_degree || part.missing_degree;
        out.value += inv[j][t] * part.value;
    }
    return out;
}

// --- formal sums -------------------------------------------------------------

void fcs_add(FormalCoeffSum& sum, const std::string& key, const LaurentScalar& value) {
    if (value.is_zero()) return;
    auto it = sum.find(key);
    if (it == sum.end()) {
        sum.emplace(key, value);
    } else {
        it->second += value;
        if (it->second.is_zero()) sum.erase(it);
    }
}

std::string fcs_to_string(const FormalCoeffSum& sum, const SymbolRegistry& reg) {
    if (sum.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, v] : sum) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.to_string(reg) << ")*a[" << key << "]";
    }
    return os.str();
}

// --- verification engines ----------------------------------------------------

namespace {

struct ProjectionGroups {
    std::vector<Sublattice> upstairs;       // sublattices of Lambda
    std::vector<Sublattice> downstairs;     // sublattices of Lambda'
    std::vector<std::vector<size_t>> fiber; // indices of upstairs per downstairs slot
    bool covered = true;                    // every projection matched a downstairs lattice
};

ProjectionGroups group_by_projection(const GramLattice& lam_prime, long p, BetweenMode mode,
                                     std::uint64_t budget) {
    ProjectionGroups g;
    GramLattice lam = extend_by_zero(lam_prime);
    g.upstairs = enumerate_between(lam, p, mode, budget);
    g.downstairs = enumerate_between(lam_prime, p, mode, budget);
    std::map<std::string, size_t> slot;
    for (size_t i = 0; i < g.downstairs.size(); ++i) slot[g.downstairs[i].key()] = i;
    g.fiber.assign(g.downstairs.size(), {});
    for (size_t i = 0; i < g.upstairs.size(); ++i) {
        std::string key = project_drop_last(g.upstairs[i]).key();
        auto it = slot.find(key);
        if (it == slot.end()) {
            g.covered = false;
            continue;
        }
        g.fiber[it->second].push_back(i);
    }
    return g;
}

CheckRecord equality_record(const std::string& name, const FormalCoeffSum& lhs,
                            const FormalCoeffSum& rhs, const SymbolRegistry& reg) {
    CheckRecord rec;
    rec.name = name;
    rec.pass = (lhs == rhs);
    rec.lhs = fcs_to_string(lhs, reg);
    rec.rhs = fcs_to_string(rhs, reg);
    return rec;
}

}  // namespace

VerifyReport verify_intertwine_tp(const GramLattice& lam_prime, long p, ExecPolicy pol,
                                  std::uint64_t budget) {
    VerifyReport report;
    report.suite = "intertwine-tp";
    ScalarContext ctx;
    PrimeVal pv = PrimeVal::concrete(p);
    ChiPow chi = chi_plain(ctx);
    int n = lam_prime.rank() + 1;

    ProjectionGroups g = group_by_projection(lam_prime, p, BetweenMode::NarrowTp, budget);
    LaurentScalar c = c_tp(ctx, pv, chi, n);

    report.checks.resize(g.downstairs.size() + 1);
    parallel_for(g.downstairs.size(), pol, [&](size_t i) {
        const Sublattice& omp = g.downstairs[i];
        CheckRecord rec;
        rec.name = "Omega'=" + omp.key();
        try {
            // both sides carry the single symbol a(pi(Omega)^{1/p}) = a(Omega'^{1/p})
            FormalCoeffSum lhs, rhs;
            std::string sym = omp.key() + "^{1/p}";
            for (size_t u : g.fiber[i]) {
                PType t = g.upstairs[u].ptype_narrow();
                fcs_add(lhs, sym, chi(t.m0) * exponent_E(ctx, pv, t, n));
            }
            PType tp = omp.ptype_narrow();
            fcs_add(rhs, sym, c * chi(tp.m0) * exponent_E(ctx, pv, tp, n - 1));
            rec = equality_record(rec.name, lhs, rhs, ctx.reg);
        } catch (const std::exception& e) {
            rec.pass = false;
            rec.lhs = std::string("exception: ") + e.what();
        }
        report.checks[i] = rec;
    });

    CheckRecord cov;
    cov.name = "projection coverage";
    size_t total = 0;
    for (const auto& f : g.fiber) total += f.size();
    cov.pass = g.covered && total == g.upstairs.size();
    cov.lhs = std::to_string(total);
    cov.rhs = std::to_string(g.upstairs.size());
    report.checks.back() = cov;
    return report;
}

VerifyReport verify_intertwine_ttilde(const GramLattice& lam_prime, long p, int j,
                                      ExecPolicy pol, std::uint64_t budget) {
    VerifyReport report;
    report.suite = "intertwine-tj";
    ScalarContext ctx;
    PrimeVal pv = PrimeVal::concrete(p);
    ChiPow chi = chi_plain(ctx);
    int n = lam_prime.rank() + 1;
    if (j < 1 || j > n) throw std::invalid_argument("verify_intertwine_ttilde: need 1 <= j <= n");

    ProjectionGroups g = group_by_projection(lam_prime, p, BetweenMode::WideTilde, budget);
    Integer p2 = Integer(p) * p;

    report.checks.resize(g.downstairs.size() + 1);
    parallel_for(g.downstairs.size(), pol, [&](size_t i) {
        const Sublattice& omp = g.downstairs[i];
        CheckRecord rec;
        rec.name = "Omega'=" + omp.key() + " j=" + std::to_string(j);
        try {
            // a(Omega; F) = 0 unless the induced form is even integral, and
            // alpha is a well-defined count exactly on that locus. The bridge
            // Gram(Omega) = diag(Gram(pi(Omega)), 0) ties the two sides: all
            // preimages of Omega' share its integrality status.
            if (!is_even_integral(omp.induced_gram_num(), p2)) {
                bool fibers_match = true;
                for (size_t u : g.fiber[i])
                    if (is_even_integral(g.upstairs[u].induced_gram_num(), p2))
                        fibers_match = false;
                rec.pass = fibers_match;
                rec.lhs = "0 (not even integral)";
                rec.rhs = "0 (not even integral)";
                report.checks[i] = rec;
                return;
            }
            FormalCoeffSum lhs, rhs;
            std::string sym = omp.key();
            for (size_t u : g.fiber[i]) {
                const Sublattice& om = g.upstairs[u];
                if (!is_even_integral(om.induced_gram_num(), p2)) {
                    rec.pass = false;
                    rec.lhs = "preimage of even-integral Omega' not even integral";
                    report.checks[i] = rec;
                    return;
                }
                Integer alpha = alpha_isotropic(om, n, j, budget);
                if (alpha == 0) continue;
                PType t = om.ptype_wide();
                fcs_add(lhs, sym,
                        chi(j - n + 2 * t.m0 + t.m1) * exponent_Ej(ctx, pv, t, n, j) *
                            LaurentScalar::from_rational(Rational(alpha)));
            }
            PType tp = omp.ptype_wide();
            for (int s = j - 2; s <= j; ++s) {
                if (s < 0 || s > n - 1) continue;  // T~_s^{(n-1)} is the zero operator
                LaurentScalar coeff = (s == j) ? LaurentScalar::one() : ctilde(ctx, pv, chi, n, j, s);
                Integer alpha = alpha_isotropic(omp, n - 1, s, budget);
                if (alpha == 0) continue;
                fcs_add(rhs, sym,
                        coeff * chi(s - (n - 1) + 2 * tp.m0 + tp.m1) *
                            exponent_Ej(ctx, pv, tp, n - 1, s) *
                            LaurentScalar::from_rational(Rational(alpha)));
            }
            rec = equality_record(rec.name, lhs, rhs, ctx.reg);
        } catch (const std::exception& e) {
            rec.pass = false;
            rec.lhs = std::string("exception: ") + e.what();
        }
        report.checks[i] = rec;
    });

    CheckRecord cov;
    cov.name = "projection coverage";
    size_t total = 0;
    for (const auto& f : g.fiber) total += f.size();
    cov.pass = g.covered && total == g.upstairs.size();
    cov.lhs = std::to_string(total);
    cov.rhs = std::to_string(g.upstairs.size());
    report.checks.back() = cov;
    return report;
}

VerifyReport verify_projection_classes(const GramLattice& lam_prime, long p, ExecPolicy pol,
                                       std::uint64_t budget) {
    VerifyReport report;
    report.suite = "projection-classes";
    int n = lam_prime.rank() + 1;

    ProjectionGroups g = group_by_projection(lam_prime, p, BetweenMode::WideTilde, budget);

    report.checks.resize(g.downstairs.size());
    parallel_for(g.downstairs.size(), pol, [&](size_t i) {
        const Sublattice& omp = g.downstairs[i];
        CheckRecord rec;
        rec.name = "Omega'=" + omp.key();
        try {
            PType tp = omp.ptype_wide();
            int l = tp.m0, r = tp.m0 + tp.m1;
            PType typeA{l + 1, r - l, n - r - 1};
            PType typeB{l, r - l + 1, n - r - 1};
            PType typeC{l, r - l, n - r};
            PType typeD{l + 1, r - l - 1, n - r};
            std::vector<size_t> classA, classB, classC, classD;
            bool ok = true;
            std::ostringstream why;
            for (size_t u : g.fiber[i]) {
                PType t = g.upstairs[u].ptype_wide();
                if (t == typeA) classA.push_back(u);
                else if (t == typeB) classB.push_back(u);
                else if (t == typeC) classC.push_back(u);
                else if (t == typeD) classD.push_back(u);
                else {
                    ok = false;
                    why << "unexpected preimage p-type; ";
                }
            }
            Integer pl = int_pow(Integer(p), (unsigned long)l);
            Integer plr = int_pow(Integer(p), (unsigned long)(l + r));
            Integer dcount = pl * (int_pow(Integer(p), (unsigned long)(r - l)) - 1);
            if (Integer((long)classA.size()) != 1) ok = false, why << "countA; ";
            if (Integer((long)classB.size()) != pl) ok = false, why << "countB; ";
            if (Integer((long)classC.size()) != plr) ok = false, why << "countC; ";
            if (Integer((long)classD.size()) != dcount) ok = false, why << "countD; ";

            // alpha is a canonical count only where the induced form is even
            // integral (elsewhere a(Omega; F) = 0 and the relations are moot)
            bool alpha_defined =
                is_even_integral(omp.induced_gram_num(), Integer(p) * p);
            for (int j = 0; alpha_defined && j <= n && ok; ++j) {
                Rational aj_down = Rational(alpha_isotropic(omp, n - 1, j, budget));
                Rational ajm1_down = Rational(alpha_isotropic(omp, n - 1, j - 1, budget));
                Rational ajm2_down = Rational(alpha_isotropic(omp, n - 1, j - 2, budget));
                for (size_t u : classA)
                    if (Rational(alpha_isotropic(g.upstairs[u], n, j, budget)) != ajm1_down)
                        ok = false, why << "alphaA j=" << j << "; ";
                for (size_t u : classB) {
                    Rational expect = rat_pow(Rational(p), r - l - n + j + 1) * aj_down + ajm1_down;
                    if (Rational(alpha_isotropic(g.upstairs[u], n, j, budget)) != expect)
                        ok = false, why << "alphaB j=" << j << "; ";
                }
                for (size_t u : classC)
                    if (Rational(alpha_isotropic(g.upstairs[u], n, j, budget)) != ajm1_down)
                        ok = false, why << "alphaC j=" << j << "; ";
                Rational dsum = 0;
                for (size_t u : classD)
                    dsum += Rational(alpha_isotropic(g.upstairs[u], n, j, budget));
                Rational dexpect =
                    Rational(pl) * (rat_pow(Rational(p), n - j + 1) - 1) * ajm2_down;
                if (dsum != dexpect) ok = false, why << "alphaD j=" << j << "; ";
            }
            rec.pass = ok;
            rec.lhs = why.str();
            rec.rhs = "";
        } catch (const std::exception& e) {
            rec.pass = false;
            rec.lhs = std::string("exception: ") + e.what();
        }
        report.checks[i] = rec;
    });
    return report;
}

VerifyReport verify_counts(const GramLattice& lam, long p, int n_formal, ExecPolicy pol,
                           std::uint64_t budget) {
    VerifyReport report;
    report.suite = "counts";
    int n = lam.rank();

    auto subs = enumerate_between(lam, p, BetweenMode::WideTilde, budget);
    std::map<PType, Integer> by_type;
    for (const auto& om : subs) by_type[om.ptype_wide()] += 1;

    for (int s = 0; s <= n; ++s)
        for (int t = 0; t <= s; ++t) {
            PType ty{t, s - t, n - s};
            CheckRecord rec;
            rec.name = "count p-type (" + std::to_string(ty.m0) + "," + std::to_string(ty.m1) +
                       "," + std::to_string(ty.m2) + ")";
            Integer got = by_type.count(ty) ? by_type[ty] : 0;
            Integer want = ptype_count_formula(n, s, t, p);
            rec.pass = (got == want);
            rec.lhs = got.str();
            rec.rhs = want.str();
            report.checks.push_back(rec);
        }

    if (n <= 3) {
        auto direct = enumerate_between_direct(lam, p, BetweenMode::WideTilde, budget);
        CheckRecord rec;
        rec.name = "parameterised enumeration equals direct subgroup enumeration";
        rec.pass = (subs == direct);
        rec.lhs = std::to_string(subs.size());
        rec.rhs = std::to_string(direct.size());
        report.checks.push_back(rec);
    }

    // polynomial recomposition identity (Remark) in the formal prime
    ScalarContext ctx;
    PrimeVal fp = PrimeVal::formal_symbol();
    auto pw = [&](long e) { return ppow(ctx, fp, e); };
    for (int nn = 1; nn <= n_formal; ++nn)
        for (int s = 0; s <= nn; ++s)
            for (int t = 0; t <= s; ++t) {
                LaurentScalar want = gb(ctx, fp, nn, s) * gb(ctx, fp, s, t) * pw((long)t * (nn - s));
                LaurentScalar got =
                    gb(ctx, fp, nn - 1, s - 1) * gb(ctx, fp, s - 1, t - 1) *
                        pw((long)(t - 1) * (nn - s)) +
                    pw(t) * gb(ctx, fp, nn - 1, s - 1) * gb(ctx, fp, s - 1, t) *
                        pw((long)t * (nn - s)) +
                    pw(t + s) * gb(ctx, fp, nn - 1, s) * gb(ctx, fp, s, t) *
                        pw((long)t * (nn - s - 1)) +
                    (pw(s) - pw(t - 1)) * gb(ctx, fp, nn - 1, s) * gb(ctx, fp, s, t - 1) *
                        pw((long)(t - 1) * (nn - s - 1));
                CheckRecord rec;
                rec.name = "recomposition identity n=" + std::to_string(nn) + " s=" +
                           std::to_string(s) + " t=" + std::to_string(t);
                rec.pass = (got == want);
                if (!rec.pass) {
                    rec.lhs = got.to_string(ctx.reg);
                    rec.rhs = want.to_string(ctx.reg);
                }
                report.checks.push_back(rec);
            }
    (void)pol;
    return report;
}

VerifyReport derive_theorem1_from_proposition(int n) {
    VerifyReport report;
    report.suite = "coeff-derivation";
    ScalarContext ctx;
    PrimeVal pv = PrimeVal::formal_symbol();
    ChiPow chi = chi_plain(ctx);

    auto prefactor = [&](int deg, int m) {
        // p^{(deg-m)(deg-k+1)} chibar(p^{deg-m})
        return ppow(ctx, pv, (long)(deg - m) * (deg + 1)) *
               LaurentScalar::monomial(ctx.K, -(deg - m)) *
               LaurentScalar::monomial(ctx.X, -(deg - m));
    };

    // unknowns c[t][s], 0 <= s <= min(t, n-1)
    std::vector<std::vector<LaurentScalar>> c((size_t)n + 1,
                                              std::vector<LaurentScalar>((size_t)n + 1));
    for (int t = 0; t <= n; ++t) {
        LaurentScalar pref_inv = prefactor(n, t).invert_monomial();
        for (int s = std::min(t, n - 1); s >= 0; --s) {
            LaurentScalar rhs;
            for (int i = 0; i <= 2; ++i) {
                int m = t - i;
                if (m < 0 || m > n - 1) continue;  // T~_m^{(n-1)} out of range
                LaurentScalar coeff = (i == 0) ? LaurentScalar::one() : ctilde(ctx, pv, chi, n, t, m);
                rhs += coeff * prefactor(n - 1, m) * gb(ctx, pv, n - 1 - s, m - s);
            }
            LaurentScalar known;
            for (int u = s; u < t; ++u) known += gb(ctx, pv, n - u, t - u) * c[u][s];
            c[t][s] = rhs * pref_inv - known;
        }
    }

    auto check = [&](const std::string& name, const LaurentScalar& got,
                     const LaurentScalar& want) {
        CheckRecord rec;
        rec.name = name;
        rec.pass = (got == want);
        rec.lhs = got.to_string(ctx.reg);
        rec.rhs = want.to_string(ctx.reg);
        report.checks.push_back(rec);
    };

    for (int j = 0; j <= n; ++j) {
        if (j <= n - 1) check("c_{" + std::to_string(j) + "," + std::to_string(j) + "}",
                              c[j][j], c_tj(ctx, pv, chi, n, j, j));
        if (j >= 1)
            check("c_{" + std::to_string(j) + "," + std::to_string(j - 1) + "}", c[j][j - 1],
                  c_tj(ctx, pv, chi, n, j, j - 1));
        if (j >= 2)
            check("c_{" + std::to_string(j) + "," + std::to_string(j - 2) + "}", c[j][j - 2],
                  c_tj(ctx, pv, chi, n, j, j - 2));
        for (int s = 0; s < j - 2; ++s)
            check("c_{" + std::to_string(j) + "," + std::to_string(s) + "} vanishes", c[j][s],
                  LaurentScalar::zero());
    }

    // T(p) coefficient from the two projection classes, also symbolic:
    // class A shifts the E-exponent by one chi(p)K factor, class B contributes
    // p^r copies of a p^{-r} shift; the sum must be 1 + chi(p) K p^{-n}.
    for (int r = 0; r <= n - 1; ++r) {
        PType up_a{r + 1, n - r - 1, 0}, up_b{r, n - r, 0}, down{r, n - 1 - r, 0};
        LaurentScalar down_coeff = chi(down.m0) * exponent_E(ctx, pv, down, n - 1);
        LaurentScalar got = (chi(up_a.m0) * exponent_E(ctx, pv, up_a, n) +
                             ppow(ctx, pv, r) * chi(up_b.m0) * exponent_E(ctx, pv, up_b, n)) *
                            down_coeff.invert_monomial();
        check("c^{(n-1)} from classes, r=" + std::to_string(r), got, c_tp(ctx, pv, chi, n));
    }
    return report;
}

LaurentScalar degree1_hecke_oracle(const std::map<long, LaurentScalar>& coeffs, long m, long p,
                                   ScalarContext& ctx) {
    LaurentScalar out;
    auto it = coeffs.find(p * m);
    if (it != coeffs.end()) out += it->second;
    if (m % p == 0) {
        auto lo = coeffs.find(m / p);
        if (lo != coeffs.end())
            out += LaurentScalar::monomial(ctx.X, 1) * LaurentScalar::monomial(ctx.K, 1) *
                   ppow(ctx, PrimeVal::concrete(p), -1) * lo->second;
    }
    return out;
}

}  // namespace siegel

#include "siegel/cusps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace siegel {

bool is_squarefree(long n) {
    if (n <= 0) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<long> divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

CuspTuple::CuspTuple(long N, int degree, std::vector<long> parts)
    : N_(N), degree_(degree), parts_(std::move(parts)) {
    if (!is_squarefree(N_)) throw std::invalid_argument("CuspTuple: N not squarefree");
    if ((int)parts_.size() > degree_) throw std::invalid_argument("CuspTuple: too many parts");
    long prod = 1;
    for (long v : parts_) {
        if (v <= 0 || N_ % v != 0) throw std::invalid_argument("CuspTuple: part not a divisor");
        if (std::gcd(prod, v) != 1) throw std::invalid_argument("CuspTuple: parts not coprime");
        prod *= v;
    }
}

long CuspTuple::l(int i) const {
    int m = (int)parts_.size();  // = n - r
    if (i < 0 || i > m) throw std::out_of_range("CuspTuple::l index");
    if (i == 0) {
        long prod = 1;
        for (long v : parts_) prod *= v;
        return N_ / prod;
    }
    return parts_[(size_t)(m - i)];
}

std::string CuspTuple::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

std::vector<CuspTuple> enumerate_cusps(long N, int n, int r) {
    if (!is_squarefree(N)) throw std::invalid_argument("enumerate_cusps: N not squarefree");
    if (r < 0 || r > n) throw std::invalid_argument("enumerate_cusps: level out of range");
    int slots = n - r;  // parts l_{n-r}, ..., l_1
    std::vector<long> primes = prime_divisors(N);
    std::vector<CuspTuple> out;
    std::vector<int> assign(primes.size(), 0);  // 0 = goes to l_0
    while (true) {
        std::vector<long> parts((size_t)slots, 1);
        for (size_t k = 0; k < primes.size(); ++k)
            if (assign[k] > 0) parts[(size_t)(slots - assign[k])] *= primes[k];
        out.emplace_back(N, n, parts);
        size_t k = 0;
        while (k < primes.size() && ++assign[k] == slots + 1) assign[k++] = 0;
        if (k == primes.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CuspTuple> cusps_above(const CuspTuple& c) {
    int n = c.degree(), s = c.level();
    if (s >= n - 1)
        throw std::invalid_argument("cusps_above: level n-1 lies only on the interior");
    int m = n - s;  // parts l_m, ..., l_1
    // choices c_i | l_i for 1 <= i <= m-1
    std::vector<std::vector<long>> choice((size_t)m - 1);
    for (int i = 1; i <= m - 1; ++i) choice[(size_t)(i - 1)] = divisors(c.l(i));
    std::vector<size_t> idx(choice.size(), 0);
    std::vector<CuspTuple> out;
    while (true) {
        auto ci = [&](int i) { return choice[(size_t)(i - 1)][idx[(size_t)(i - 1)]]; };
        std::vector<long> parts;  // (d_{m-1}, ..., d_1), top down
        parts.push_back(c.l(m) * ci(m - 1));
        for (int i = m - 2; i >= 1; --i) parts.push_back((c.l(i + 1) / ci(i + 1)) * ci(i));
        out.emplace_back(c.level_N(), n, parts);
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == choice[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CuspTuple embed_cusp(const CuspTuple& outer, const CuspTuple& inner) {
    long N = outer.level_N();
    if (inner.level_N() != N) throw std::invalid_argument("embed_cusp: level mismatch");
    int n = outer.degree(), r = outer.level();
    if (inner.degree() != r) throw std::invalid_argument("embed_cusp: inner degree must be r");
    int s = inner.level();
    // l'_i products of gcds; factors referring to undefined l_a or m_b are
    // omitted (l_a defined for 0 <= a <= n-r, m_b for 0 <= b <= r-s)
    auto lval = [&](int a) -> long { return (a < 0 || a > n - r) ? 0 : outer.l(a); };
    auto mval = [&](int b) -> long { return (b < 0 || b > r - s) ? 0 : inner.l(b); };
    std::vector<long> parts;  // (l'_{n-s}, ..., l'_1)
    for (int i = n - s; i >= 1; --i) {
        long v = 1;
        if (i > r - s) {
            for (int b = r - s; b >= 0; --b) {
                long la = lval(i - (r - s) + b), mb = mval(b);
                if (la && mb) v *= std::gcd(mb, la);
            }
        } else {
            for (int b = r - s; b >= r - s - (i - 1); --b) {
                long la = lval(i - (r - s) + b), mb = mval(b);
                if (la && mb) v *= std::gcd(mb, la);
            }
            long mi = mval(i), l0 = lval(0);
            if (mi && l0) v *= std::gcd(mi, l0);
        }
        parts.push_back(v);
    }
    return CuspTuple(N, n, parts);
}

VerifyReport verify_multiplicity(long N, int n, int s) {
    VerifyReport report;
    report.suite = "multiplicity";
    if (!is_squarefree(N)) throw std::invalid_argument("verify_multiplicity: N not squarefree");
    if (s < 0 || s >= n) throw std::invalid_argument("verify_multiplicity: level out of range");
    int t = (int)prime_divisors(N).size();
    Integer closed = int_pow(Integer(2), (unsigned long)t) *
                     int_pow(Integer(n - s), (unsigned long)t);

    Integer via_fibers = 0;
    std::map<CuspTuple, Integer> per_upper;
    auto lower = enumerate_cusps(N, n, s);
    if (s == n - 1) {
        // each (n-1)-cusp lies once on the unique interior component
        via_fibers = Integer((long)lower.size());
    } else {
        for (const CuspTuple& c : lower)
            for (const CuspTuple& d : cusps_above(c)) {
                via_fibers += 1;
                per_upper[d] += 1;
            }
    }

    CheckRecord rec;
    rec.name = "sum over s-cusps of #(s+1)-components above, s=" + std::to_string(s);
    rec.pass = (via_fibers == closed);
    rec.lhs = via_fibers.str();
    rec.rhs = closed.str();
    report.checks.push_back(rec);

    if (s < n - 1) {
        // grouped the other way: every (s+1)-cusp carries exactly 2^t s-cusps
        Integer expect_each = int_pow(Integer(2), (unsigned long)t);
        auto upper = enumerate_cusps(N, n, s + 1);
        bool ok = (per_upper.size() == upper.size());
        for (const auto& [d, cnt] : per_upper)
            if (cnt != expect_each) ok = false;
        CheckRecord rec2;
        rec2.name = "every (s+1)-cusp carries 2^t s-cusps";
        rec2.pass = ok;
        rec2.lhs = std::to_string(per_upper.size());
        rec2.rhs = std::to_string(upper.size());
        report.checks.push_back(rec2);
    }
    return report;
}

IntMat sl2_crt_lift(long l, long m) {
    if (std::gcd(l, m) != 1) throw std::invalid_argument("sl2_crt_lift: arguments not coprime");
    Integer l2 = Integer(l) * l, m2 = Integer(m) * m, mod = l2 * m2;
    // CRT for a pair of residues
    auto crt = [&](const Integer& rl, const Integer& rm) {
        // x = rl (mod l2), x = rm (mod m2)
        for (Integer x = 0; x < mod; ++x)
            if ((x - rl) % l2 == 0 && (x - rm) % m2 == 0) return x;
        throw std::logic_error("crt failed");
    };
    Integer c = crt(1, 0), d = crt(0, 1);
    while (gcd_int(c, d) != 1) d += mod;
    // a0 d - b0 c = 1 via extended gcd
    Integer a0 = 0, b0 = 0;
    {
        Integer old_r = d, r = c, old_s = 1, ss = 0, old_t = 0, tt = 1;
        while (r != 0) {
            Integer q = old_r / r;
            Integer tmp = old_r - q * r; old_r = r; r = tmp;
            tmp = old_s - q * ss; old_s = ss; ss = tmp;
            tmp = old_t - q * tt; old_t = tt; tt = tmp;
        }
        // old_s * d + old_t * c = old_r = gcd = 1
        if (old_r == -1) { old_s = -old_s; old_t = -old_t; }
        a0 = old_s;
        b0 = -old_t;
    }
    // shift (a, b) = (a0 + tc, b0 + td): mod l2 wants a = 0 (b = -1 holds
    // automatically), mod m2 wants b = 0 (a = 1 automatic)
    Integer tshift = crt(mod_floor(-a0, l2), mod_floor(-b0, m2));
    Integer a = a0 + tshift * c, b = b0 + tshift * d;
    IntMat out(2, 2);
    out.at(0, 0) = a;
    out.at(0, 1) = b;
    out.at(1, 0) = c;
    out.at(1, 1) = d;
    if (det(out) != 1) throw std::logic_error("sl2_crt_lift: determinant not 1");
    return out;
}

IntMat SymplecticMatrix::block_a() const {
    int m = half_size();
    std::vector<int> lo, hi;
    for (int i = 0; i < m; ++i) lo.push_back(i), hi.push_back(m + i);
    return mat.submatrix(lo, lo);
}
IntMat SymplecticMatrix::block_b() const {
    int m = half_size();
    std::vector<int> lo, hi;
    for (int i = 0; i < m; ++i) lo.push_back(i), hi.push_back(m + i);
    return mat.submatrix(lo, hi);
}
IntMat SymplecticMatrix::block_c() const {
    int m = half_size();
    std::vector<int> lo, hi;
    for (int i = 0; i < m; ++i) lo.push_back(i), hi.push_back(m + i);
    return mat.submatrix(hi, lo);
}
IntMat SymplecticMatrix::block_d() const {
    int m = half_size();
    std::vector<int> lo, hi;
    for (int i = 0; i < m; ++i) lo.push_back(i), hi.push_back(m + i);
    return mat.submatrix(hi, hi);
}
IntMat SymplecticMatrix::block_c22(int r) const {
    int m = half_size();
    std::vector<int> rows, cols;
    for (int i = r; i < m; ++i) rows.push_back(m + i), cols.push_back(i);
    return mat.submatrix(rows, cols);
}

static IntMat sympl_j(int m) {
    IntMat j(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        j.at(i, m + i) = -1;
        j.at(m + i, i) = 1;
    }
    return j;
}

bool SymplecticMatrix::is_symplectic() const {
    int m = half_size();
    IntMat j = sympl_j(m);
    return mat.transpose() * j * mat == j.scaled(mu);
}

SymplecticMatrix gamma_rep(long N, long l, int r) {
    if (l <= 0 || N % l != 0) throw std::invalid_argument("gamma_rep: l must divide N");
    IntMat g2 = sl2_crt_lift(l, N / l);
    SymplecticMatrix out;
    out.mat = IntMat(2 * r, 2 * r);
    for (int i = 0; i < r; ++i) {
        out.mat.at(i, i) = g2.at(0, 0);
        out.mat.at(i, r + i) = g2.at(0, 1);
        out.mat.at(r + i, i) = g2.at(1, 0);
        out.mat.at(r + i, r + i) = g2.at(1, 1);
    }
    out.mu = 1;
    return out;
}

SymplecticMatrix kappa_rep(long N, long l, int n) {
    SymplecticMatrix g = gamma_rep(N, l, n);
    IntMat scale(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        scale.at(i, i) = 1;
        scale.at(n + i, n + i) = l;
    }
    SymplecticMatrix out;
    out.mat = scale * g.mat;
    out.mu = l;
    return out;
}

SymplecticMatrix xi_embed(const SymplecticMatrix& g, int n) {
    int r = g.half_size();
    if (r > n) throw std::invalid_argument("xi_embed: target degree too small");
    SymplecticMatrix out;
    out.mat = IntMat::identity(2 * n);
    out.mu = g.mu;
    if (g.mu != 1) throw std::invalid_argument("xi_embed: expects Sp (mu = 1)");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            out.mat.at(i, j) = g.mat.at(i, j);              // A
            out.mat.at(i, n + j) = g.mat.at(i, r + j);      // B
            out.mat.at(n + i, j) = g.mat.at(r + i, j);      // C
            out.mat.at(n + i, n + j) = g.mat.at(r + i, r + j);  // D
        }
    return out;
}

SymplecticMatrix standard_rep(const CuspTuple& c) {
    long N = c.level_N();
    int n = c.degree(), r = c.level();
    SymplecticMatrix out;
    out.mat = IntMat::identity(2 * n);
    out.mu = 1;
    // gamma^{(n)}(l_{n-r}) xi_{n-1,n}(gamma^{(n-1)}(l_{n-r-1})) ... xi_{r+1,n}(gamma^{(r+1)}(l_1))
    for (int i = n - r; i >= 1; --i) {
        int deg = r + i;
        SymplecticMatrix g = gamma_rep(N, c.l(i), deg);
        SymplecticMatrix e = (deg == n) ? g : xi_embed(g, n);
        out.mat = out.mat * e.mat;
    }
    return out;
}

bool rank_profile_matches(const CuspTuple& c, const SymplecticMatrix& rep) {
    long N = c.level_N();
    int n = c.degree(), r = c.level();
    IntMat c22 = rep.block_c22(r);
    for (long p : prime_divisors(N)) {
        int rk = fp_rank(FpMatrix::reduce(c22, p));
        int want = 0;
        for (int i = 1; i <= n - r; ++i)
            if (c.l(i) % p == 0) want = i;
        if (rk != want) return false;
    }
    return true;
}

namespace {

// random element of Gamma_0^(n)(N) as a product of elementary symplectic
// generators: upper unipotents (1 B; 0 1) with B symmetric, lower unipotents
// (1 0; N C 1) with C symmetric, and GL_n blocks (U 0; 0 U^{-t}).
SymplecticMatrix random_gamma0(long N, int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> val(-2, 2), pick(0, 2), idx(0, n - 1);
    IntMat acc = IntMat::identity(2 * n);
    for (int step = 0; step < 8; ++step) {
        IntMat g = IntMat::identity(2 * n);
        int kind = pick(rng);
        if (kind == 0) {
            IntMat b(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) b.at(i, j) = b.at(j, i) = val(rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g.at(i, n + j) = b.at(i, j);
        } else if (kind == 1) {
            IntMat cmat(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) cmat.at(i, j) = cmat.at(j, i) = N * val(rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g.at(n + i, j) = cmat.at(i, j);
        } else {
            // unimodular U from a single shear (or swap-with-sign)
            IntMat u = IntMat::identity(n);
            if (n > 1) {
                int i = idx(rng), j = idx(rng);
                if (i != j) u.at(i, j) = val(rng);
            }
            IntMat uinvt = adjugate(u).transpose();
            if (det(u) == -1) uinvt = uinvt.scaled(Integer(-1));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    g.at(i, j) = u.at(i, j);
                    g.at(n + i, n + j) = uinvt.at(i, j);
                }
        }
        acc = acc * g;
    }
    SymplecticMatrix out;
    out.mat = acc;
    out.mu = 1;
    return out;
}

}  // namespace

VerifyReport verify_reps(long N, int n, std::uint64_t seed, ExecPolicy pol) {
    VerifyReport report;
    report.suite = "reps";
    std::vector<CuspTuple> all;
    for (int r = 0; r < n; ++r)
        for (const auto& c : enumerate_cusps(N, n, r)) all.push_back(c);

    std::vector<CheckRecord> recs(all.size());
    parallel_for(all.size(), pol, [&](size_t i) {
        const CuspTuple& c = all[i];
        CheckRecord rec;
        rec.name = "rep for r=" + std::to_string(c.level()) + " cusp " + c.to_string();
        try {
            SymplecticMatrix rep = standard_rep(c);
            bool ok = rep.is_symplectic() && rep.mu == 1;
            if (!ok) rec.lhs = "not symplectic";
            if (ok && !rank_profile_matches(c, rep)) {
                ok = false;
                rec.lhs = "rank profile mismatch";
            }
            rec.pass = ok;
        } catch (const std::exception& e) {
            rec.pass = false;
            rec.lhs = std::string("exception: ") + e.what();
        }
        recs[i] = rec;
    });
    report.checks = std::move(recs);

    // gamma^{(r)}(l) defining congruences
    for (int r = 1; r <= n; ++r)
        for (long l : divisors(N)) {
            SymplecticMatrix g = gamma_rep(N, l, r);
            Integer l2 = Integer(l) * l, m2 = Integer(N / l) * (N / l);
            IntMat j = sympl_j(r);
            bool ok = g.is_symplectic();
            ok = ok && (g.mat - j).divisible_by(l2);
            ok = ok && (g.mat - IntMat::identity(2 * r)).divisible_by(m2);
            CheckRecord rec;
            rec.name = "gamma(" + std::to_string(l) + ") congruences at degree " +
                       std::to_string(r);
            rec.pass = ok;
            report.checks.push_back(rec);
        }

    // kappa(l)^{-1} Gamma_0(N) kappa(l) stays inside Gamma_0(N)
    std::mt19937_64 rng(seed);
    for (long l : divisors(N)) {
        SymplecticMatrix kap = kappa_rep(N, l, n);
        IntMat adj = adjugate(kap.mat);
        Integer dk = det(kap.mat);
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            SymplecticMatrix g = random_gamma0(N, n, rng);
            // kappa^{-1} g kappa = adj * g * kappa / det
            IntMat prod = adj * g.mat * kap.mat;
            if (!prod.divisible_by(dk)) { ok = false; break; }
            IntMat conj = prod.divided_by(dk);
            SymplecticMatrix cm{conj, 1};
            if (!cm.is_symplectic()) { ok = false; break; }
            if (!conj.submatrix([&] {
                        std::vector<int> v;
                        for (int i = 0; i < n; ++i) v.push_back(n + i);
                        return v;
                    }(),
                    [&] {
                        std::vector<int> v;
                        for (int i = 0; i < n; ++i) v.push_back(i);
                        return v;
                    }())
                     .divisible_by(Integer(N)))
                ok = false;
        }
        CheckRecord rec;
        rec.name = "kappa(" + std::to_string(l) + ") conjugation stability";
        rec.pass = ok;
        report.checks.push_back(rec);
    }
    return report;
}

CuspIncidence cusp_incidence(long N, int n) {
    CuspIncidence inc;
    inc.by_level.resize((size_t)n);
    for (int s = 0; s < n; ++s) inc.by_level[(size_t)s] = enumerate_cusps(N, n, s);
    for (int s = 0; s + 1 < n; ++s) {
        std::map<CuspTuple, size_t> upper_index;
        for (size_t k = 0; k < inc.by_level[(size_t)s + 1].size(); ++k)
            upper_index[inc.by_level[(size_t)s + 1][k]] = k;
        for (size_t i = 0; i < inc.by_level[(size_t)s].size(); ++i)
            for (const CuspTuple& d : cusps_above(inc.by_level[(size_t)s][i]))
                inc.edges.push_back({{s, i}, upper_index.at(d)});
    }
    return inc;
}

}  // namespace siegel

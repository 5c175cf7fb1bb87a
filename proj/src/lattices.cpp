#include "siegel/lattices.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace siegel {

bool is_even_gram(const IntMat& t) {
    if (!t.is_symmetric()) return false;
    for (int i = 0; i < t.rows(); ++i)
        if (t.at(i, i) % 2 != 0) return false;
    return true;
}

bool is_positive_semidefinite(const IntMat& t) {
    int n = t.rows();
    // every principal minor >= 0 (exact; n is small)
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        if (det(t.submatrix(idx, idx)) < 0) return false;
    }
    return true;
}

bool is_positive_definite(const IntMat& t) {
    int n = t.rows();
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
        idx.push_back(i);
        if (det(t.submatrix(idx, idx)) <= 0) return false;
    }
    return true;
}

GramLattice::GramLattice(IntMat gram, bool check_psd) : n_(gram.rows()), gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw std::invalid_argument("GramLattice: not square");
    if (!is_even_gram(gram_)) throw std::invalid_argument("GramLattice: Gram matrix not even");
    if (check_psd && !is_positive_semidefinite(gram_))
        throw std::invalid_argument("GramLattice: Gram matrix not positive semidefinite");
}

Sublattice::Sublattice(GramLattice ambient, long p, const IntMat& gens)
    : ambient_(std::move(ambient)), p_(p), s_(0, 0) {
    int n = ambient_.rank();
    if (gens.rows() != n) throw std::invalid_argument("Sublattice: generator rows != rank");
    if (n == 0) {
        s_ = IntMat(0, 0);
        return;
    }
    s_ = column_hnf(gens);
    // p^2 Lambda <= p Omega <= Lambda
    Integer p2 = Integer(p_) * p_;
    IntMat adj = adjugate(s_);
    Integer d = det(s_);
    if (d <= 0) throw std::invalid_argument("Sublattice: degenerate basis");
    // p^2 * s^{-1} integral <=> p^2 * adj / det integral
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((p2 * adj.at(i, j)) % d != 0)
                throw std::invalid_argument("Sublattice: not between pL and p^{-1}L");
}

bool Sublattice::contained_in_ambient() const {
    return s_.divisible_by(Integer(p_));
}

PType Sublattice::ptype_wide() const {
    int n = ambient_.rank();
    PType t;
    if (n == 0) return t;
    SmithBasis sb = smith_with_basis(s_);
    Integer p(p_), p2 = p * p;
    for (const Integer& d : sb.divisors) {
        if (d == 1) ++t.m0;
        else if (d == p) ++t.m1;
        else if (d == p2) ++t.m2;
        else throw std::logic_error("ptype: unexpected elementary divisor");
    }
    return t;
}

PType Sublattice::ptype_narrow() const {
    if (!contained_in_ambient())
        throw std::domain_error("ptype_narrow: sublattice not contained in ambient");
    PType w = ptype_wide();
    if (w.m0 != 0) throw std::logic_error("ptype_narrow: inconsistent wide type");
    return PType{w.m1, w.m2, 0};
}

IntMat Sublattice::middle_block_basis() const {
    int n = ambient_.rank();
    SmithBasis sb = smith_with_basis(s_);
    Integer p(p_);
    std::vector<int> cols;
    for (int i = 0; i < n; ++i)
        if (sb.divisors[i] == p) cols.push_back(i);
    IntMat out(n, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j)
        for (int i = 0; i < n; ++i) out.at(i, j) = sb.basis.at(i, cols[j]);
    return out;
}

std::string Sublattice::key() const {
    std::ostringstream os;
    os << p_ << ":" << s_.to_string();
    return os.str();
}

bool is_even_integral(const IntMat& num, const Integer& den) {
    for (int i = 0; i < num.rows(); ++i)
        for (int j = 0; j < num.cols(); ++j) {
            if (num.at(i, j) % den != 0) return false;
            if (i == j && (num.at(i, i) / den) % 2 != 0) return false;
        }
    return true;
}

Integer ptype_count_formula(int n, int s, int t, long p) {
    return gaussian_binomial_int(n, s, p) * gaussian_binomial_int(s, t, p) *
           int_pow(Integer(p), (unsigned long)(t * (n - s)));
}

namespace {

// integral lift of an RREF subspace basis, as columns
IntMat lift_columns(const FpSubspace& sub) {
    IntMat m(sub.cols, sub.rows);
    for (int i = 0; i < sub.rows; ++i)
        for (int j = 0; j < sub.cols; ++j) m.at(j, i) = sub.at(i, j);
    return m;
}

Integer expected_total(int n, long p, BetweenMode mode) {
    Integer total = 0;
    if (mode == BetweenMode::NarrowTp) {
        for (int s = 0; s <= n; ++s) total += gaussian_binomial_int(n, s, p);
    } else {
        for (int s = 0; s <= n; ++s)
            for (int t = 0; t <= s; ++t) total += ptype_count_formula(n, s, t, p);
    }
    return total;
}

}  // namespace

std::vector<Sublattice> enumerate_between(const GramLattice& lat, long p, BetweenMode mode,
                                          std::uint64_t budget) {
    int n = lat.rank();
    Integer expected = expected_total(n, p, mode);
    if (expected > budget) throw BudgetExceeded(expected);

    std::vector<Sublattice> out;
    if (n == 0) {
        out.emplace_back(lat, p, IntMat(0, 0));
        return out;
    }
    IntMat p_id = IntMat::identity(n).scaled(p);

    if (mode == BetweenMode::NarrowTp) {
        for (int s = 0; s <= n; ++s)
            for (const FpSubspace& sub : enumerate_subspaces(p, n, s, budget)) {
                IntMat basis = column_hnf(lift_columns(sub).hcat(p_id));
                out.emplace_back(lat, p, basis.scaled(p));
            }
    } else {
        for (int s = 0; s <= n; ++s)
            for (const FpSubspace& d1bar : enumerate_subspaces(p, n, s, budget)) {
                IntMat d1 = column_hnf(lift_columns(d1bar).hcat(p_id));
                // image of pL inside D1/pD1, in D1-coordinates
                IntMat p_d1inv = adjugate(d1).scaled(p);
                Integer dd = det(d1);
                p_d1inv = p_d1inv.divided_by(dd);  // p * d1^{-1}, integral here
                FpMatrix pbar = FpMatrix::reduce(p_d1inv, p);
                for (int t = 0; t <= s; ++t)
                    for (const FpSubspace& d2bar : enumerate_subspaces(p, n, t, budget)) {
                        // require d2bar linearly independent of the image of pL
                        FpMatrix joint(p, t + n, n);
                        for (int i = 0; i < t; ++i)
                            for (int j = 0; j < n; ++j) joint.at(i, j) = d2bar.at(i, j);
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j) joint.at(t + i, j) = pbar.at(j, i);
                        if (fp_rank(joint) != t + (n - s)) continue;
                        IntMat gens = (d1 * lift_columns(d2bar)).hcat(d1.scaled(p));
                        out.emplace_back(lat, p, column_hnf(gens));
                    }
            }
    }
    std::sort(out.begin(), out.end());
    if (Integer((long)out.size()) != expected)
        throw std::logic_error("enumerate_between: count mismatch against closed formula");
    return out;
}

std::vector<Sublattice> enumerate_between_direct(const GramLattice& lat, long p,
                                                 BetweenMode mode, std::uint64_t budget) {
    int n = lat.rank();
    if (n > 3) throw std::domain_error("direct enumeration oracle supports rank <= 3");
    Integer expected = expected_total(n, p, mode);
    if (expected > budget) throw BudgetExceeded(expected);

    std::vector<Sublattice> out;
    if (n == 0) {
        out.emplace_back(lat, p, IntMat(0, 0));
        return out;
    }
    Integer p2 = Integer(p) * p;
    // scan all column-HNF matrices S: lower triangular, pivots among
    // {1, p, p^2}, entries left of a pivot in [0, pivot); keep those with
    // p^2 S^{-1} integral (and S divisible by p in the narrow mode).
    std::vector<Integer> pivot_choices = {Integer(1), Integer(p), p2};
    std::vector<int> diag_idx(n, 0);
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) cells.emplace_back(i, j);
    while (true) {
        std::vector<Integer> radix(cells.size());
        for (size_t k = 0; k < cells.size(); ++k) radix[k] = pivot_choices[diag_idx[cells[k].first]];
        std::vector<Integer> assign(cells.size(), Integer(0));
        while (true) {
            IntMat s(n, n);
            for (int i = 0; i < n; ++i) s.at(i, i) = pivot_choices[diag_idx[i]];
            for (size_t k = 0; k < cells.size(); ++k)
                s.at(cells[k].first, cells[k].second) = assign[k];
            Integer d = det(s);
            IntMat adj = adjugate(s);
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j)
                    if ((p2 * adj.at(i, j)) % d != 0) ok = false;
            if (ok && mode == BetweenMode::NarrowTp && !s.divisible_by(Integer(p))) ok = false;
            if (ok) out.emplace_back(lat, p, s);
            size_t k = 0;
            for (; k < cells.size(); ++k) {
                assign[k] += 1;
                if (assign[k] < radix[k]) break;
                assign[k] = 0;
            }
            if (k == cells.size()) break;
        }
        int i = 0;
        for (; i < n; ++i) {
            if (++diag_idx[i] < 3) break;
            diag_idx[i] = 0;
        }
        if (i == n) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GramLattice extend_by_zero(const GramLattice& lat) {
    int n = lat.rank();
    IntMat g(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = lat.gram().at(i, j);
    return GramLattice(g, false);
}

GramLattice projected_ambient(const GramLattice& lat) {
    int n = lat.rank();
    if (n == 0) throw std::invalid_argument("projected_ambient: rank 0");
    std::vector<int> idx;
    for (int i = 0; i + 1 < n; ++i) idx.push_back(i);
    return GramLattice(lat.gram().submatrix(idx, idx), false);
}

Sublattice project_drop_last(const Sublattice& om) {
    const GramLattice& amb = om.ambient();
    int n = amb.rank();
    if (n == 0) throw std::invalid_argument("project_drop_last: rank 0");
    for (int i = 0; i < n; ++i)
        if (amb.gram().at(i, n - 1) != 0 || amb.gram().at(n - 1, i) != 0)
            throw std::invalid_argument("project_drop_last: ambient not extended by zero");
    GramLattice down = projected_ambient(amb);
    if (n == 1) return Sublattice(down, om.p(), IntMat(0, 0));
    return Sublattice(down, om.p(), om.scaled_basis().drop_last_row());
}

Sublattice whole_lattice(const GramLattice& lat, long p) {
    return Sublattice(lat, p, IntMat::identity(lat.rank()).scaled(p));
}

Sublattice scaled_lattice(const GramLattice& lat, long p, int power) {
    Integer f = 1;
    for (int i = 0; i < power + 1; ++i) f *= p;  // p^{power} * (p * I)
    return Sublattice(lat, p, IntMat::identity(lat.rank()).scaled(f));
}

std::vector<std::vector<Integer>> vectors_of_norm(const IntMat& t, const Integer& value) {
    int n = t.rows();
    std::vector<std::vector<Integer>> out;
    if (n == 0) {
        if (value == 0) out.push_back({});
        return out;
    }
    if (value < 0) return out;
    // |x_i| <= sqrt(value * (T^{-1})_{ii}) with T^{-1} = adj/det, exact
    IntMat adj = adjugate(t);
    Integer dd = det(t);
    if (dd <= 0) throw std::invalid_argument("vectors_of_norm: form not positive definite");
    std::vector<Integer> bound(n);
    for (int i = 0; i < n; ++i) {
        // ceil(sqrt(value * adj_ii / det)) via integer sqrt of the ceiling
        Integer num = value * adj.at(i, i);
        Integer q = num / dd + ((num % dd != 0) ? 1 : 0);
        bound[i] = isqrt(q) + 1;
    }
    std::vector<Integer> x(n);
    // depth-first box scan with exact norm check at the leaves
    std::vector<Integer> stack_val;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            Integer norm = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) norm += x[a] * t.at(a, b) * x[b];
            if (norm == value) out.push_back(x);
            return;
        }
        for (Integer v = -bound[i]; v <= bound[i]; ++v) {
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

bool backtrack_isometry(const IntMat& t1, const IntMat& t2,
                        const std::map<Integer, std::vector<std::vector<Integer>>>& candidates,
                        std::vector<std::vector<Integer>>& chosen, int col) {
    int n = t2.rows();
    if (col == n) return true;
    const auto& cands = candidates.at(t2.at(col, col));
    for (const auto& v : cands) {
        bool ok = true;
        for (int j = 0; j < col && ok; ++j) {
            Integer ip = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) ip += chosen[j][a] * t1.at(a, b) * v[b];
            if (ip != t2.at(j, col)) ok = false;
        }
        if (!ok) continue;
        chosen.push_back(v);
        if (backtrack_isometry(t1, t2, candidates, chosen, col + 1)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

bool gram_equivalent(const IntMat& t1, const IntMat& t2, int max_rank, long max_entry) {
    if (t1.rows() != t2.rows()) return false;
    int n = t1.rows();
    if (n == 0) return true;
    if (n > max_rank) throw std::domain_error("equivalence test unsupported at this size");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (abs(t1.at(i, j)) > max_entry || abs(t2.at(i, j)) > max_entry)
                throw std::domain_error("equivalence test unsupported at this size");
        }
    if (!is_positive_definite(t1) || !is_positive_definite(t2))
        throw std::domain_error("equivalence test requires positive definite forms");
    if (det(t1) != det(t2)) return false;
    // diagonal multisets of representable norms must allow a match
    std::map<Integer, std::vector<std::vector<Integer>>> candidates;
    for (int i = 0; i < n; ++i) {
        Integer c = t2.at(i, i);
        if (!candidates.count(c)) candidates[c] = vectors_of_norm(t1, c);
        if (candidates[c].empty()) return false;
    }
    std::vector<std::vector<Integer>> chosen;
    if (!backtrack_isometry(t1, t2, candidates, chosen, 0)) return false;
    // chosen columns give G with G^t T1 G = T2 on inner products; G is
    // automatically in GL_n(Z) since det(T1) = det(T2) forces det(G) = +-1
    return true;
}

}  // namespace siegel

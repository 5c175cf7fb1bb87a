#include "siegel/fpspaces.hpp"

#include <algorithm>
#include <stdexcept>

namespace siegel {

FpMatrix FpMatrix::reduce(const IntMat& m, long p) {
    FpMatrix r(p, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = mod_long(m.at(i, j), p);
    return r;
}

long fp_inv(long x, long p) {
    long t = 0, nt = 1, r = p, nr = ((x % p) + p) % p;
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("fp_inv: not invertible");
    return ((t % p) + p) % p;
}

FpMatrix fp_rref(const FpMatrix& m) {
    FpMatrix w = m;
    long p = m.p;
    int lead = 0;
    for (int row = 0; row < w.rows && lead < w.cols; ++row) {
        int piv = -1;
        while (lead < w.cols) {
            for (int i = row; i < w.rows; ++i)
                if (w.at(i, lead) != 0) { piv = i; break; }
            if (piv >= 0) break;
            ++lead;
        }
        if (piv < 0) break;
        if (piv != row)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(row, j));
        long inv = fp_inv(w.at(row, lead), p);
        for (int j = 0; j < w.cols; ++j) w.at(row, j) = (w.at(row, j) * inv) % p;
        for (int i = 0; i < w.rows; ++i) {
            if (i == row || w.at(i, lead) == 0) continue;
            long f = w.at(i, lead);
            for (int j = 0; j < w.cols; ++j)
                w.at(i, j) = ((w.at(i, j) - f * w.at(row, j)) % p + p) % p;
        }
        ++lead;
    }
    return w;
}

int fp_rank(const FpMatrix& m) {
    FpMatrix r = fp_rref(m);
    int rank = 0;
    for (int i = 0; i < r.rows; ++i) {
        bool nonzero = false;
        for (int j = 0; j < r.cols; ++j)
            if (r.at(i, j) != 0) { nonzero = true; break; }
        if (nonzero) ++rank;
    }
    return rank;
}

Integer gaussian_binomial_int(int n, int r, long p) {
    if (r < 0 || n < 0 || r > n) return 0;
    // Pascal recursion (n r)_p = (n-1 r-1)_p + p^r (n-1 r)_p
    std::vector<Integer> row(1, Integer(1));
    for (int i = 1; i <= n; ++i) {
        std::vector<Integer> next(i + 1);
        next[0] = 1;
        next[i] = 1;
        for (int j = 1; j < i; ++j) next[j] = row[j - 1] + int_pow(Integer(p), (unsigned long)j) * row[j];
        row = std::move(next);
    }
    return row[r];
}

LaurentScalar gaussian_binomial(int n, int r, long p) {
    return LaurentScalar::from_rational(Rational(gaussian_binomial_int(n, r, p)));
}

LaurentScalar gaussian_binomial_formal(int n, int r, SymbolId p_symbol) {
    if (r < 0 || n < 0 || r > n) return LaurentScalar::zero();
    std::vector<LaurentScalar> row(1, LaurentScalar::one());
    for (int i = 1; i <= n; ++i) {
        std::vector<LaurentScalar> next((size_t)i + 1);
        next[0] = LaurentScalar::one();
        next[i] = LaurentScalar::one();
        for (int j = 1; j < i; ++j)
            next[j] = row[j - 1] + LaurentScalar::monomial(p_symbol, j) * row[j];
        row = std::move(next);
    }
    return row[r];
}

std::vector<FpSubspace> enumerate_subspaces(long p, int d, int dim, std::uint64_t budget) {
    if (dim < 0 || dim > d) return {};
    Integer expected = gaussian_binomial_int(d, dim, p);
    if (expected > budget) throw BudgetExceeded(expected);

    std::vector<FpSubspace> out;
    out.reserve((size_t)expected);

    // choose pivot columns c_0 < ... < c_{dim-1}
    std::vector<int> pivots(dim);
    for (int i = 0; i < dim; ++i) pivots[i] = i;
    auto next_combination = [&]() {
        int i = dim - 1;
        while (i >= 0 && pivots[i] == d - dim + i) --i;
        if (i < 0) return false;
        ++pivots[i];
        for (int j = i + 1; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
        return true;
    };

    if (dim == 0) {
        out.emplace_back(p, 0, d);
        return out;
    }
    do {
        std::vector<bool> is_pivot(d, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<std::pair<int, int>> free_cells;  // (row, col), col right of pivot, non-pivot
        for (int i = 0; i < dim; ++i)
            for (int j = pivots[i] + 1; j < d; ++j)
                if (!is_pivot[j]) free_cells.emplace_back(i, j);

        std::vector<long> assign(free_cells.size(), 0);
        while (true) {
            FpMatrix b(p, dim, d);
            for (int i = 0; i < dim; ++i) b.at(i, pivots[i]) = 1;
            for (size_t k = 0; k < free_cells.size(); ++k)
                b.at(free_cells[k].first, free_cells[k].second) = assign[k];
            out.push_back(std::move(b));
            size_t k = 0;
            while (k < assign.size() && ++assign[k] == p) assign[k++] = 0;
            if (k == assign.size()) break;
        }
    } while (next_combination());
    return out;
}

FpQuadSpace FpQuadSpace::from_even_gram(const IntMat& even_gram, long p) {
    if (!even_gram.is_symmetric()) throw std::invalid_argument("FpQuadSpace: gram not symmetric");
    FpQuadSpace s;
    s.p = p;
    s.dim = even_gram.rows();
    s.gram = FpMatrix::reduce(even_gram, p);
    s.diagQ.resize(s.dim);
    for (int i = 0; i < s.dim; ++i) {
        if (even_gram.at(i, i) % 2 != 0)
            throw std::invalid_argument("FpQuadSpace: diagonal not even");
        s.diagQ[i] = mod_long(even_gram.at(i, i) / 2, p);
    }
    return s;
}

long FpQuadSpace::q_value(const std::vector<long>& v) const {
    long total = 0;
    for (int i = 0; i < dim; ++i) {
        if (v[i] == 0) continue;
        total = (total + v[i] * v[i] % p * diagQ[i]) % p;
        for (int j = i + 1; j < dim; ++j)
            total = (total + v[i] * v[j] % p * gram.at(i, j)) % p;
    }
    return total;
}

std::vector<std::vector<long>> subspace_vectors(const FpSubspace& basis) {
    long p = basis.p;
    int m = basis.rows, d = basis.cols;
    std::vector<std::vector<long>> out;
    std::vector<long> coeff(m, 0);
    while (true) {
        std::vector<long> v(d, 0);
        for (int i = 0; i < m; ++i) {
            if (coeff[i] == 0) continue;
            for (int j = 0; j < d; ++j) v[j] = (v[j] + coeff[i] * basis.at(i, j)) % p;
        }
        out.push_back(std::move(v));
        int k = 0;
        while (k < m && ++coeff[k] == p) coeff[k++] = 0;
        if (k == m) break;
    }
    return out;
}

Integer count_totally_isotropic(const FpQuadSpace& space, int codim, std::uint64_t budget) {
    if (codim < 0) return 0;
    int target = space.dim - codim;
    if (target < 0) return 0;
    Integer count = 0;
    for (const FpSubspace& sub : enumerate_subspaces(space.p, space.dim, target, budget)) {
        bool isotropic = true;
        for (const auto& v : subspace_vectors(sub))
            if (space.q_value(v) != 0) { isotropic = false; break; }
        if (isotropic) ++count;
    }
    return count;
}

}  // namespace siegel

#include "siegel/intmatrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace siegel {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = (int)rows.size();
    cols_ = rows_ ? (int)rows.begin()->size() : 0;
    a_.assign((size_t)rows_ * cols_, Integer(0));
    int i = 0;
    for (const auto& row : rows) {
        if ((int)row.size() != cols_) throw std::invalid_argument("IntMat: ragged initializer");
        int j = 0;
        for (long v : row) at(i, j++) = v;
        ++i;
    }
}

bool IntMat::operator<(const IntMat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (size_t k = 0; k < a_.size(); ++k)
        if (a_[k] != o.a_[k]) return a_[k] < o.a_[k];
    return false;
}

IntMat IntMat::transpose() const {
    IntMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat: dimension mismatch in mul");
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Integer& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat: add mismatch");
    IntMat r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat: sub mismatch");
    IntMat r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

IntMat IntMat::scaled(const Integer& c) const {
    IntMat r = *this;
    for (auto& v : r.a_) v *= c;
    return r;
}

bool IntMat::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

bool IntMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

IntMat IntMat::submatrix(const std::vector<int>& ri, const std::vector<int>& ci) const {
    IntMat r((int)ri.size(), (int)ci.size());
    for (int i = 0; i < (int)ri.size(); ++i)
        for (int j = 0; j < (int)ci.size(); ++j) r.at(i, j) = at(ri[i], ci[j]);
    return r;
}

IntMat IntMat::drop_last_row() const {
    if (rows_ == 0) throw std::invalid_argument("IntMat: no row to drop");
    IntMat r(rows_ - 1, cols_);
    for (int i = 0; i + 1 < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    return r;
}

IntMat IntMat::hcat(const IntMat& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("IntMat: hcat mismatch");
    IntMat r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

IntMat IntMat::mod(const Integer& m) const {
    IntMat r = *this;
    for (auto& v : r.a_) v = mod_floor(v, m);
    return r;
}

bool IntMat::divisible_by(const Integer& m) const {
    for (const auto& v : a_)
        if (v % m != 0) return false;
    return true;
}

IntMat IntMat::divided_by(const Integer& m) const {
    if (!divisible_by(m)) throw std::domain_error("IntMat: inexact division");
    IntMat r = *this;
    for (auto& v : r.a_) v /= m;
    return r;
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ";" : "") << "[";
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

Integer det(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    // cofactor expansion along the first row; n stays tiny in this project
    Integer total = 0;
    std::vector<int> rows, cols;
    for (int i = 1; i < n; ++i) rows.push_back(i);
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        cols.clear();
        for (int c = 0; c < n; ++c)
            if (c != j) cols.push_back(c);
        Integer minor = det(m.submatrix(rows, cols));
        total += ((j % 2) ? -1 : 1) * m.at(0, j) * minor;
    }
    return total;
}

IntMat adjugate(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate: not square");
    int n = m.rows();
    IntMat adj(n, n);
    if (n == 0) return adj;
    std::vector<int> rows, cols;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rows.clear();
            cols.clear();
            for (int r = 0; r < n; ++r)
                if (r != i) rows.push_back(r);
            for (int c = 0; c < n; ++c)
                if (c != j) cols.push_back(c);
            Integer cof = det(m.submatrix(rows, cols));
            adj.at(j, i) = (((i + j) % 2) ? -1 : 1) * cof;
        }
    return adj;
}

int rank_rational(const IntMat& m) {
    // fraction-free Gaussian elimination on a working copy
    IntMat w = m;
    int rank = 0;
    int r = w.rows(), c = w.cols();
    for (int col = 0; col < c && rank < r; ++col) {
        int piv = -1;
        for (int i = rank; i < r; ++i)
            if (w.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < c; ++j) std::swap(w.at(piv, j), w.at(rank, j));
        for (int i = rank + 1; i < r; ++i) {
            Integer f = w.at(i, col), p = w.at(rank, col);
            if (f == 0) continue;
            for (int j = 0; j < c; ++j) w.at(i, j) = w.at(i, j) * p - w.at(rank, j) * f;
        }
        ++rank;
    }
    return rank;
}

IntMat column_hnf(const IntMat& m) {
    int r = m.rows(), c = m.cols();
    if (c < r) throw std::invalid_argument("column_hnf: fewer columns than rows");
    IntMat h = m;
    auto col_sub = [&](int dst, int src, const Integer& q) {
        for (int i = 0; i < r; ++i) h.at(i, dst) -= q * h.at(i, src);
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < r; ++i) std::swap(h.at(i, a), h.at(i, b));
    };
    for (int i = 0; i < r; ++i) {
        // gcd out row i across columns i..c-1 until a single pivot remains
        while (true) {
            int best = -1;
            for (int j = i; j < c; ++j) {
                if (h.at(i, j) == 0) continue;
                if (best < 0 || abs(h.at(i, j)) < abs(h.at(i, best))) best = j;
            }
            if (best < 0) throw std::domain_error("column_hnf: matrix not of full row rank");
            if (best != i) col_swap(i, best);
            bool clean = true;
            for (int j = i + 1; j < c; ++j) {
                if (h.at(i, j) == 0) continue;
                Integer q = floor_div(h.at(i, j), h.at(i, i));
                col_sub(j, i, q);
                if (h.at(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(i, i) < 0)
            for (int k = 0; k < r; ++k) h.at(k, i) = -h.at(k, i);
    }
    // reduce entries left of each pivot into [0, pivot)
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < i; ++j) {
            Integer q = floor_div(h.at(i, j), h.at(i, i));
            if (q != 0) col_sub(j, i, q);
        }
    std::vector<int> ri, ci;
    for (int i = 0; i < r; ++i) ri.push_back(i), ci.push_back(i);
    return h.submatrix(ri, ci);
}

SmithBasis smith_with_basis(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("smith_with_basis: not square");
    int n = m.rows();
    IntMat w = m;
    IntMat basis = IntMat::identity(n);  // tracks U^{-1}: colspan(m) = sum d_i * basis_col_i

    // row ops on w mirror inverse column ops on basis
    auto row_sub = [&](int dst, int src, const Integer& q) {
        for (int j = 0; j < n; ++j) w.at(dst, j) -= q * w.at(src, j);
        for (int i = 0; i < n; ++i) basis.at(i, src) += q * basis.at(i, dst);
    };
    auto row_swap = [&](int a, int b) {
        for (int j = 0; j < n; ++j) std::swap(w.at(a, j), w.at(b, j));
        for (int i = 0; i < n; ++i) std::swap(basis.at(i, a), basis.at(i, b));
    };
    auto row_neg = [&](int a) {
        for (int j = 0; j < n; ++j) w.at(a, j) = -w.at(a, j);
        for (int i = 0; i < n; ++i) basis.at(i, a) = -basis.at(i, a);
    };
    auto col_sub = [&](int dst, int src, const Integer& q) {
        for (int i = 0; i < n; ++i) w.at(i, dst) -= q * w.at(i, src);
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < n; ++i) std::swap(w.at(i, a), w.at(i, b));
    };

    for (int t = 0; t < n; ++t) {
        while (true) {
            int bi = -1, bj = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j) {
                    if (w.at(i, j) == 0) continue;
                    if (bi < 0 || abs(w.at(i, j)) < abs(w.at(bi, bj))) bi = i, bj = j;
                }
            if (bi < 0) throw std::domain_error("smith_with_basis: singular matrix");
            if (bi != t) row_swap(bi, t);
            if (bj != t) col_swap(bj, t);
            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (w.at(i, t) == 0) continue;
                row_sub(i, t, floor_div(w.at(i, t), w.at(t, t)));
                if (w.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (w.at(t, j) == 0) continue;
                col_sub(j, t, floor_div(w.at(t, j), w.at(t, t)));
                if (w.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // enforce d_t | everything below-right
            bool divides = true;
            for (int i = t + 1; i < n && divides; ++i)
                for (int j = t + 1; j < n && divides; ++j)
                    if (w.at(i, j) % w.at(t, t) != 0) {
                        row_sub(t, i, Integer(-1));  // add row i into row t
                        divides = false;
                    }
            if (divides) break;
        }
        if (w.at(t, t) < 0) row_neg(t);
    }
    SmithBasis out;
    out.basis = basis;
    for (int t = 0; t < n; ++t) out.divisors.push_back(w.at(t, t));
    return out;
}

KernelSplit kernel_split(const IntMat& m) {
    // Diagonalize U*m*V with untracked row ops and V-tracked column ops.
    // Column j of m*V equals d_j * (U^{-1} e_j), so the V-columns past the
    // rank are a basis of the saturated kernel, and the leading V-columns
    // complete it to a basis of Z^n.
    int r = m.rows(), n = m.cols();
    IntMat w = m;
    IntMat v = IntMat::identity(n);
    auto col_sub = [&](int dst, int src, const Integer& q) {
        for (int i = 0; i < r; ++i) w.at(i, dst) -= q * w.at(i, src);
        for (int i = 0; i < n; ++i) v.at(i, dst) -= q * v.at(i, src);
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < r; ++i) std::swap(w.at(i, a), w.at(i, b));
        for (int i = 0; i < n; ++i) std::swap(v.at(i, a), v.at(i, b));
    };
    auto row_sub = [&](int dst, int src, const Integer& q) {
        for (int j = 0; j < n; ++j) w.at(dst, j) -= q * w.at(src, j);
    };
    int rank = 0;
    int bound = std::min(r, n);
    for (int t = 0; t < bound; ++t) {
        bool empty = true;
        while (true) {
            int bi = -1, bj = -1;
            for (int i = t; i < r; ++i)
                for (int j = t; j < n; ++j) {
                    if (w.at(i, j) == 0) continue;
                    if (bi < 0 || abs(w.at(i, j)) < abs(w.at(bi, bj))) bi = i, bj = j;
                }
            if (bi < 0) break;
            empty = false;
            if (bi != t)
                for (int j = 0; j < n; ++j) std::swap(w.at(bi, j), w.at(t, j));
            if (bj != t) col_swap(bj, t);
            bool clean = true;
            for (int i = t + 1; i < r; ++i)
                if (w.at(i, t) != 0) {
                    row_sub(i, t, floor_div(w.at(i, t), w.at(t, t)));
                    if (w.at(i, t) != 0) clean = false;
                }
            for (int j = t + 1; j < n; ++j)
                if (w.at(t, j) != 0) {
                    col_sub(j, t, floor_div(w.at(t, j), w.at(t, t)));
                    if (w.at(t, j) != 0) clean = false;
                }
            if (clean) break;
        }
        if (empty) break;
        ++rank;
    }
    KernelSplit out;
    out.kernel = IntMat(n, n - rank);
    out.complement = IntMat(n, rank);
    for (int i = 0; i < n; ++i) {
        for (int j = rank; j < n; ++j) out.kernel.at(i, j - rank) = v.at(i, j);
        for (int j = 0; j < rank; ++j) out.complement.at(i, j) = v.at(i, j);
    }
    return out;
}

}  // namespace siegel

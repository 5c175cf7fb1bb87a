#pragma once

#include "siegel/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace siegel {

// Dense integer matrix over cpp_int. Row-major; sizes here are tiny (n <= 8),
// so everything is exact and unoptimized.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_((size_t)rows * cols, Integer(0)) {}
    IntMat(std::initializer_list<std::initializer_list<long>> rows);

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Integer& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const Integer& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMat& o) const { return !(*this == o); }
    bool operator<(const IntMat& o) const;  // lexicographic; used for canonical ordering

    IntMat transpose() const;
    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat scaled(const Integer& c) const;
    bool is_zero() const;
    bool is_symmetric() const;

    IntMat submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;
    IntMat drop_last_row() const;
    // Horizontal concatenation [this | o].
    IntMat hcat(const IntMat& o) const;
    // Entrywise reduction mod m into [0, m).
    IntMat mod(const Integer& m) const;
    bool divisible_by(const Integer& m) const;
    IntMat divided_by(const Integer& m) const;  // requires exact divisibility

    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

Integer det(const IntMat& m);
// adjugate: adj(m) * m = det(m) * I. Defined for square m.
IntMat adjugate(const IntMat& m);
int rank_rational(const IntMat& m);  // rank over Q (fraction-free elimination)

// Column-style Hermite normal form of a full-row-rank matrix (rows <= cols):
// returns the unique square H with H = M*U for unimodular U, H lower
// triangular, positive pivots on the diagonal, and every entry left of a
// pivot reduced into [0, pivot). Throws if M does not have full row rank.
IntMat column_hnf(const IntMat& m);

// Smith normal form data for a square nonsingular M: divisors d_0 | d_1 | ...
// (positive) together with a basis matrix B (columns f_i) of Z^n such that
// colspan(M) = (+) Z d_i f_i.
struct SmithBasis {
    std::vector<Integer> divisors;
    IntMat basis;  // n x n unimodular
};
SmithBasis smith_with_basis(const IntMat& m);

// Saturated kernel of an integer matrix (basis of ker over Z, as columns),
// together with a completion to a basis of Z^n: [kernel | complement] is
// unimodular. Used to split off radicals of PSD Gram matrices.
struct KernelSplit {
    IntMat kernel;      // n x k
    IntMat complement;  // n x (n-k)
};
KernelSplit kernel_split(const IntMat& m);

}  // namespace siegel

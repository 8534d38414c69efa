#ifndef QHCALC_MATRIX_HPP
#define QHCALC_MATRIX_HPP

#include <optional>
#include <vector>

#include "qhcalc/scalar.hpp"

namespace qhcalc {

// Dense matrix over an exact field. Dimensions are fixed at construction;
// entries are mutable only through set() while a matrix is being filled.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, Field f = Field())
        : rows_(rows), cols_(cols), field_(f), e_(static_cast<size_t>(rows) * cols, Scalar(0)) {
        check_internal(rows >= 0 && cols >= 0, "negative matrix dimension");
    }

    static Matrix identity(int n, Field f = Field());
    static Matrix zero(int rows, int cols, Field f = Field()) { return Matrix(rows, cols, f); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return field_; }

    const Scalar& at(int r, int c) const {
        check_internal(r >= 0 && r < rows_ && c >= 0 && c < cols_, "matrix index out of bounds");
        return e_[static_cast<size_t>(r) * cols_ + c];
    }
    void set(int r, int c, const Scalar& v) {
        check_internal(r >= 0 && r < rows_ && c >= 0 && c < cols_, "matrix index out of bounds");
        e_[static_cast<size_t>(r) * cols_ + c] = field_.normalize(v);
    }

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;

    Matrix hstack(const Matrix& o) const;
    Matrix vstack(const Matrix& o) const;
    Matrix submatrix(int r0, int c0, int nrows, int ncols) const;
    Matrix columns(const std::vector<int>& idx) const;
    Matrix row(int r) const { return submatrix(r, 0, 1, cols_); }
    Matrix col(int c) const { return submatrix(0, c, rows_, 1); }

private:
    int rows_, cols_;
    Field field_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    int rank = 0;
    Matrix rref;
    std::vector<int> pivot_cols;
};

// Reduced row echelon form with deterministic pivoting: scan columns left to
// right, pivot on the first row with a nonzero entry.
RrefResult rank_rref(const Matrix& m);

// Columns form a basis of the right null space {x : m x = 0}; the basis is the
// standard one read off the rref (one column per free column, free variable 1,
// other free variables 0).
Matrix kernel_basis(const Matrix& m);

// Solves m x = b columnwise; free variables are set to 0. Empty result when
// the system is inconsistent.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

// Inverse of a square matrix; empty when singular.
std::optional<Matrix> inverse(const Matrix& m);

Scalar determinant(const Matrix& m);

// Row space of `sub` as a subspace of the row space of `space`:
// true iff every row of sub is a combination of rows of space.
bool rowspace_contains(const Matrix& space, const Matrix& sub);

bool same_rowspace(const Matrix& a, const Matrix& b);

} // namespace qhcalc

#endif

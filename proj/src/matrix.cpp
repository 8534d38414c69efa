#include "qhcalc/matrix.hpp"

namespace qhcalc {

Matrix Matrix::identity(int n, Field f) {
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar(1));
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& v : e_)
        if (sgn(v) != 0) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_internal(cols_ == o.rows_, "matrix product dimension mismatch");
    Matrix p(rows_, o.cols_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(r, k);
            if (sgn(a) == 0) continue;
            for (int c = 0; c < o.cols_; ++c) {
                const Scalar& b = o.at(k, c);
                if (sgn(b) == 0) continue;
                p.set(r, c, field_.add(p.at(r, c), field_.mul(a, b)));
            }
        }
    return p;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_internal(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
    Matrix s(rows_, cols_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) s.set(r, c, field_.add(at(r, c), o.at(r, c)));
    return s;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_internal(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
    Matrix s(rows_, cols_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) s.set(r, c, field_.sub(at(r, c), o.at(r, c)));
    return s;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix s(rows_, cols_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) s.set(r, k, field_.mul(at(r, k), c));
    return s;
}

Matrix Matrix::hstack(const Matrix& o) const {
    check_internal(rows_ == o.rows_, "hstack row mismatch");
    Matrix s(rows_, cols_ + o.cols_, field_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) s.set(r, c, at(r, c));
        for (int c = 0; c < o.cols_; ++c) s.set(r, cols_ + c, o.at(r, c));
    }
    return s;
}

Matrix Matrix::vstack(const Matrix& o) const {
    check_internal(cols_ == o.cols_, "vstack column mismatch");
    Matrix s(rows_ + o.rows_, cols_, field_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) s.set(r, c, at(r, c));
    for (int r = 0; r < o.rows_; ++r)
        for (int c = 0; c < cols_; ++c) s.set(rows_ + r, c, o.at(r, c));
    return s;
}

Matrix Matrix::submatrix(int r0, int c0, int nrows, int ncols) const {
    check_internal(r0 >= 0 && c0 >= 0 && r0 + nrows <= rows_ && c0 + ncols <= cols_,
                   "submatrix out of bounds");
    Matrix s(nrows, ncols, field_);
    for (int r = 0; r < nrows; ++r)
        for (int c = 0; c < ncols; ++c) s.set(r, c, at(r0 + r, c0 + c));
    return s;
}

Matrix Matrix::columns(const std::vector<int>& idx) const {
    Matrix s(rows_, static_cast<int>(idx.size()), field_);
    for (int r = 0; r < rows_; ++r)
        for (size_t c = 0; c < idx.size(); ++c) s.set(r, static_cast<int>(c), at(r, idx[c]));
    return s;
}

RrefResult rank_rref(const Matrix& m) {
    const Field& f = m.field();
    Matrix a = m;
    std::vector<int> pivots;
    int prow = 0;
    for (int c = 0; c < a.cols() && prow < a.rows(); ++c) {
        int sel = -1;
        for (int r = prow; r < a.rows(); ++r)
            if (!f.is_zero(a.at(r, c))) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != prow)
            for (int k = 0; k < a.cols(); ++k) {
                Scalar t = a.at(sel, k);
                a.set(sel, k, a.at(prow, k));
                a.set(prow, k, t);
            }
        Scalar piv = f.inv(a.at(prow, c));
        for (int k = c; k < a.cols(); ++k) a.set(prow, k, f.mul(a.at(prow, k), piv));
        for (int r = 0; r < a.rows(); ++r) {
            if (r == prow) continue;
            Scalar v = a.at(r, c);
            if (f.is_zero(v)) continue;
            for (int k = c; k < a.cols(); ++k)
                a.set(r, k, f.sub(a.at(r, k), f.mul(v, a.at(prow, k))));
        }
        pivots.push_back(c);
        ++prow;
    }
    return RrefResult{static_cast<int>(pivots.size()), std::move(a), std::move(pivots)};
}

Matrix kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    RrefResult rr = rank_rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(m.cols(), static_cast<int>(free_cols.size()), f);
    for (size_t j = 0; j < free_cols.size(); ++j) {
        int fc = free_cols[j];
        k.set(fc, static_cast<int>(j), Scalar(1));
        for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
            k.set(rr.pivot_cols[pi], static_cast<int>(j),
                  f.neg(rr.rref.at(static_cast<int>(pi), fc)));
    }
    return k;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    check_internal(m.rows() == b.rows(), "solve: row count mismatch");
    const Field& f = m.field();
    RrefResult rr = rank_rref(m.hstack(b));
    // inconsistent iff some pivot lands in the b-block
    for (int c : rr.pivot_cols)
        if (c >= m.cols()) return std::nullopt;
    Matrix x(m.cols(), b.cols(), f);
    for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
        for (int j = 0; j < b.cols(); ++j)
            x.set(rr.pivot_cols[pi], j, rr.rref.at(static_cast<int>(pi), m.cols() + j));
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    check_internal(m.rows() == m.cols(), "inverse of non-square matrix");
    RrefResult rr = rank_rref(m.hstack(Matrix::identity(m.rows(), m.field())));
    if (rr.rank != m.rows()) return std::nullopt;
    return rr.rref.submatrix(0, m.cols(), m.rows(), m.cols());
}

Scalar determinant(const Matrix& m) {
    check_internal(m.rows() == m.cols(), "determinant of non-square matrix");
    const Field& f = m.field();
    Matrix a = m;
    Scalar det(1);
    for (int c = 0; c < a.cols(); ++c) {
        int sel = -1;
        for (int r = c; r < a.rows(); ++r)
            if (!f.is_zero(a.at(r, c))) {
                sel = r;
                break;
            }
        if (sel < 0) return Scalar(0);
        if (sel != c) {
            for (int k = 0; k < a.cols(); ++k) {
                Scalar t = a.at(sel, k);
                a.set(sel, k, a.at(c, k));
                a.set(c, k, t);
            }
            det = f.neg(det);
        }
        det = f.mul(det, a.at(c, c));
        Scalar piv = f.inv(a.at(c, c));
        for (int r = c + 1; r < a.rows(); ++r) {
            Scalar v = f.mul(a.at(r, c), piv);
            if (f.is_zero(v)) continue;
            for (int k = c; k < a.cols(); ++k)
                a.set(r, k, f.sub(a.at(r, k), f.mul(v, a.at(c, k))));
        }
    }
    return det;
}

bool rowspace_contains(const Matrix& space, const Matrix& sub) {
    if (sub.rows() == 0) return true;
    int r0 = rank_rref(space).rank;
    return rank_rref(space.vstack(sub)).rank == r0;
}

bool same_rowspace(const Matrix& a, const Matrix& b) {
    return rowspace_contains(a, b) && rowspace_contains(b, a);
}

} // namespace qhcalc

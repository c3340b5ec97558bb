#pragma once

#include "skt/scalar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace skt {

using Vec = std::vector<Scalar>;

/// Sparse exact matrix over Gaussian rationals. Only nonzero entries are
/// stored. All solvers run plain Gauss-Jordan elimination with the pivot
/// chosen by smallest bit size; the reduced echelon form (and hence every
/// reported kernel basis) is canonical.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, Scalar(1));
        return m;
    }
    static Matrix from_columns(int rows, const std::vector<Vec>& cols);
    static Matrix from_rows(const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar at(int r, int c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Scalar() : it->second;
    }
    void set(int r, int c, const Scalar& v);

    const std::map<std::pair<int, int>, Scalar>& entries() const { return entries_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Matrix conj_transpose() const;

    Vec apply(const Vec& x) const;
    Vec column(int c) const;

    /// Horizontal concatenation [this | o].
    Matrix hcat(const Matrix& o) const;
    /// Vertical concatenation [this; o].
    Matrix vcat(const Matrix& o) const;

    bool is_zero() const { return entries_.empty(); }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    std::vector<Vec> dense() const;

private:
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, Scalar> entries_;
};

int rank(const Matrix& m);

/// Canonical basis of ker(m), one vector per free column of the reduced
/// echelon form.
std::vector<Vec> kernel_basis(const Matrix& m);

struct AffineSolution {
    Vec particular;            // A * particular == b, re-verified exactly
    std::vector<Vec> kernel;   // canonical basis of ker A
};

/// Exact affine solve. Returns std::nullopt iff b is not in the column
/// space; never throws for infeasibility.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Vec& b);

Scalar determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// Hermitian positive definite pairing matrix. Positive definiteness is
/// certified exactly via leading principal minors at construction.
class GramForm {
public:
    explicit GramForm(Matrix g);
    const Matrix& matrix() const { return g_; }
    int dim() const { return g_.rows(); }
    /// <x, y> = sum_jk x_j conj(y_k) G_jk  (conjugate-linear in y).
    Scalar pair(const Vec& x, const Vec& y) const;

private:
    Matrix g_;
};

/// Unique solution of A x = b that is G-orthogonal to ker A; std::nullopt
/// iff the system is infeasible.
std::optional<Vec> min_norm_solution(const Matrix& a, const Vec& b, const GramForm& g);

}  // namespace skt

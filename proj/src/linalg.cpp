#include "skt/linalg.hpp"

#include <stdexcept>

namespace skt {

Matrix Matrix::from_columns(int rows, const std::vector<Vec>& cols) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        if (static_cast<int>(cols[c].size()) != rows)
            throw std::invalid_argument("Matrix::from_columns: column length mismatch");
        for (int r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    int nc = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    Matrix m(static_cast<int>(rows.size()), nc);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (static_cast<int>(rows[r].size()) != nc)
            throw std::invalid_argument("Matrix::from_rows: row length mismatch");
        for (int c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void Matrix::set(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("Matrix::set: index out of range");
    if (v.is_zero())
        entries_.erase({r, c});
    else
        entries_[{r, c}] = v;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix::operator*: dimension mismatch");
    Matrix out(rows_, o.cols_);
    std::map<std::pair<int, int>, Scalar> acc;
    for (const auto& [rc, v] : entries_) {
        for (int c = 0; c < o.cols_; ++c) {
            Scalar w = o.at(rc.second, c);
            if (w.is_zero()) continue;
            acc[{rc.first, c}] += v * w;
        }
    }
    for (const auto& [rc, v] : acc)
        if (!v.is_zero()) out.set(rc.first, rc.second, v);
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("Matrix::operator+: dimension mismatch");
    Matrix out = *this;
    for (const auto& [rc, v] : o.entries_) out.set(rc.first, rc.second, out.at(rc.first, rc.second) + v);
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix out(rows_, cols_);
    if (c.is_zero()) return out;
    for (const auto& [rc, v] : entries_) out.set(rc.first, rc.second, v * c);
    return out;
}

Matrix Matrix::conj_transpose() const {
    Matrix out(cols_, rows_);
    for (const auto& [rc, v] : entries_) out.set(rc.second, rc.first, v.conj());
    return out;
}

Vec Matrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vec out(rows_, Scalar());
    for (const auto& [rc, v] : entries_) out[rc.first] += v * x[rc.second];
    return out;
}

Vec Matrix::column(int c) const {
    Vec out(rows_, Scalar());
    for (int r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

Matrix Matrix::hcat(const Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("Matrix::hcat: row mismatch");
    Matrix out(rows_, cols_ + o.cols_);
    for (const auto& [rc, v] : entries_) out.set(rc.first, rc.second, v);
    for (const auto& [rc, v] : o.entries_) out.set(rc.first, cols_ + rc.second, v);
    return out;
}

Matrix Matrix::vcat(const Matrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("Matrix::vcat: column mismatch");
    Matrix out(rows_ + o.rows_, cols_);
    for (const auto& [rc, v] : entries_) out.set(rc.first, rc.second, v);
    for (const auto& [rc, v] : o.entries_) out.set(rows_ + rc.first, rc.second, v);
    return out;
}

std::vector<Vec> Matrix::dense() const {
    std::vector<Vec> d(rows_, Vec(cols_, Scalar()));
    for (const auto& [rc, v] : entries_) d[rc.first][rc.second] = v;
    return d;
}

namespace {

struct Rref {
    std::vector<Vec> m;
    std::vector<int> pivot_cols;         // column of the pivot in each pivot row
    std::vector<int> pivot_row_of_col;   // -1 for free columns
    int nrows = 0, ncols = 0;
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Gauss-Jordan to reduced row echelon form. Within each column the pivot is
// the remaining nonzero entry of smallest bit size (first such on ties),
// which keeps coefficient growth down; the resulting RREF is canonical
// whatever the pivot order.
Rref rref(std::vector<Vec> m, int ncols) {
    Rref out;
    out.nrows = static_cast<int>(m.size());
    out.ncols = ncols;
    out.pivot_row_of_col.assign(ncols, -1);
    int row = 0;
    for (int col = 0; col < ncols && row < out.nrows; ++col) {
        int best = -1;
        std::size_t best_bits = 0;
        for (int r = row; r < out.nrows; ++r) {
            if (m[r][col].is_zero()) continue;
            std::size_t bits = m[r][col].bit_size();
            if (best < 0 || bits < best_bits) {
                best = r;
                best_bits = bits;
            }
        }
        if (best < 0) continue;
        std::swap(m[row], m[best]);
        Scalar inv = m[row][col].inverse();
        for (int c = col; c < ncols; ++c)
            if (!m[row][c].is_zero()) m[row][c] *= inv;
        for (int r = 0; r < out.nrows; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (int c = col; c < ncols; ++c)
                if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
        }
        out.pivot_row_of_col[col] = row;
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.m = std::move(m);
    return out;
}

std::vector<Vec> kernel_from_rref(const Rref& r) {
    std::vector<Vec> basis;
    for (int col = 0; col < r.ncols; ++col) {
        if (r.pivot_row_of_col[col] >= 0) continue;
        Vec v(r.ncols, Scalar());
        v[col] = Scalar(1);
        for (int prow = 0; prow < r.rank(); ++prow)
            v[r.pivot_cols[prow]] = -r.m[prow][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

int rank(const Matrix& m) { return rref(m.dense(), m.cols()).rank(); }

std::vector<Vec> kernel_basis(const Matrix& m) {
    return kernel_from_rref(rref(m.dense(), m.cols()));
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("solve_affine: dimension mismatch");
    std::vector<Vec> aug = a.dense();
    for (int r = 0; r < a.rows(); ++r) aug[r].push_back(b[r]);
    Rref rr = rref(std::move(aug), a.cols() + 1);
    if (rr.pivot_row_of_col[a.cols()] >= 0) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(a.cols(), Scalar());
    for (int prow = 0; prow < rr.rank(); ++prow)
        sol.particular[rr.pivot_cols[prow]] = rr.m[prow][a.cols()];

    // The leading block is a valid RREF of A itself (pivots are all in the
    // first a.cols() columns), so the kernel can be read off directly.
    Rref ar;
    ar.nrows = rr.nrows;
    ar.ncols = a.cols();
    ar.pivot_cols = rr.pivot_cols;
    ar.pivot_row_of_col.assign(rr.pivot_row_of_col.begin(), rr.pivot_row_of_col.begin() + a.cols());
    ar.m = rr.m;
    sol.kernel = kernel_from_rref(ar);

    // Exact re-verification of the solution and of every kernel vector.
    Vec check = a.apply(sol.particular);
    for (int r = 0; r < a.rows(); ++r)
        if (check[r] != b[r]) throw std::logic_error("solve_affine: verification failed");
    for (const Vec& k : sol.kernel) {
        Vec ak = a.apply(k);
        for (const Scalar& s : ak)
            if (!s.is_zero()) throw std::logic_error("solve_affine: kernel verification failed");
    }
    return sol;
}

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
    int n = m.rows();
    std::vector<Vec> d = m.dense();
    Scalar det(1);
    for (int col = 0; col < n; ++col) {
        int best = -1;
        std::size_t best_bits = 0;
        for (int r = col; r < n; ++r) {
            if (d[r][col].is_zero()) continue;
            std::size_t bits = d[r][col].bit_size();
            if (best < 0 || bits < best_bits) {
                best = r;
                best_bits = bits;
            }
        }
        if (best < 0) return Scalar();
        if (best != col) {
            std::swap(d[best], d[col]);
            det = -det;
        }
        det *= d[col][col];
        Scalar inv = d[col][col].inverse();
        for (int r = col + 1; r < n; ++r) {
            if (d[r][col].is_zero()) continue;
            Scalar f = d[r][col] * inv;
            for (int c = col; c < n; ++c)
                if (!d[col][c].is_zero()) d[r][c] -= f * d[col][c];
        }
    }
    return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square matrix");
    int n = m.rows();
    std::vector<Vec> aug = m.dense();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) aug[r].push_back(r == c ? Scalar(1) : Scalar());
    Rref rr = rref(std::move(aug), 2 * n);
    if (rr.rank() < n || rr.pivot_cols[n - 1] != n - 1) return std::nullopt;
    Matrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.set(r, c, rr.m[r][n + c]);
    return out;
}

GramForm::GramForm(Matrix g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols()) throw std::invalid_argument("GramForm: non-square matrix");
    for (const auto& [rc, v] : g_.entries())
        if (g_.at(rc.second, rc.first) != v.conj())
            throw std::invalid_argument("GramForm: matrix is not Hermitian");
    // leading principal minors must be real and positive
    for (int k = 1; k <= g_.rows(); ++k) {
        Matrix sub(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) sub.set(r, c, g_.at(r, c));
        Scalar det = determinant(sub);
        if (!det.is_positive_real())
            throw std::invalid_argument("GramForm: matrix is not positive definite");
    }
}

Scalar GramForm::pair(const Vec& x, const Vec& y) const {
    if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
        throw std::invalid_argument("GramForm::pair: dimension mismatch");
    Scalar out;
    for (const auto& [rc, v] : g_.entries()) {
        const Scalar& xj = x[rc.first];
        const Scalar& yk = y[rc.second];
        if (xj.is_zero() || yk.is_zero()) continue;
        out += xj * yk.conj() * v;
    }
    return out;
}

std::optional<Vec> min_norm_solution(const Matrix& a, const Vec& b, const GramForm& g) {
    if (g.dim() != a.cols())
        throw std::invalid_argument("min_norm_solution: Gram form dimension mismatch");
    auto sol = solve_affine(a, b);
    if (!sol) return std::nullopt;
    const auto& ker = sol->kernel;
    if (ker.empty()) return sol->particular;

    // x = x0 + K c with <x, k_s> = 0 for all s.
    int k = static_cast<int>(ker.size());
    Matrix m(k, k);
    Vec rhs(k, Scalar());
    for (int s = 0; s < k; ++s) {
        for (int r = 0; r < k; ++r) m.set(s, r, g.pair(ker[r], ker[s]));
        rhs[s] = -g.pair(sol->particular, ker[s]);
    }
    auto c = solve_affine(m, rhs);
    if (!c) throw std::logic_error("min_norm_solution: normal system infeasible");
    Vec x = sol->particular;
    for (int r = 0; r < k; ++r)
        for (int j = 0; j < static_cast<int>(x.size()); ++j) x[j] += c->particular[r] * ker[r][j];

    // exact orthogonality re-check against every kernel vector
    for (const Vec& kv : ker)
        if (!g.pair(x, kv).is_zero())
            throw std::logic_error("min_norm_solution: orthogonality verification failed");
    return x;
}

}  // namespace skt

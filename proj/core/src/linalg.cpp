#include "conelift/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conelift {

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

Vec axpy(double alpha, const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw InvalidInput("axpy: size mismatch");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i] + y[i];
    return r;
}

Vec scale(double alpha, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i];
    return r;
}

bool all_finite(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

void require_finite(const Vec& a, const char* what) {
    if (!all_finite(a)) throw InvalidInput(std::string(what) + ": non-finite entry");
}

// ---- Matrix -----------------------------------------------------------------

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Matrix(0, 0);
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw InvalidInput("Matrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

Vec Matrix::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw InvalidInput("Matrix::apply: dimension mismatch");
    Vec y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Vec Matrix::apply_transpose(const Vec& y) const {
    if (y.size() != rows_) throw InvalidInput("Matrix::apply_transpose: dimension mismatch");
    Vec x(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) x[j] += (*this)(i, j) * y[i];
    return x;
}

Matrix Matrix::mul(const Matrix& other) const {
    if (cols_ != other.rows_) throw InvalidInput("Matrix::mul: dimension mismatch");
    Matrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += aik * other(k, j);
        }
    return r;
}

double Matrix::norm_inf_entry() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

bool Matrix::finite() const { return all_finite(a_); }

// ---- SymMatrix --------------------------------------------------------------

std::size_t SymMatrix::idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw InvalidInput("SymMatrix: index out of range");
    if (i > j) std::swap(i, j);
    // row-major packed upper triangle
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 -
           i + static_cast<std::size_t>(j);
}

SymMatrix SymMatrix::from_full(const Matrix& full, double sym_tol) {
    if (full.rows() != full.cols() || full.rows() == 0)
        throw InvalidInput("SymMatrix::from_full: matrix must be square and nonempty");
    int n = static_cast<int>(full.rows());
    double scale = std::max(1.0, full.norm_inf_entry());
    SymMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double a = full(i, j), b = full(j, i);
            if (std::fabs(a - b) > sym_tol * scale)
                throw InvalidInput("SymMatrix::from_full: matrix is not symmetric");
            s.set(i, j, 0.5 * (a + b));
        }
    return s;
}

SymMatrix SymMatrix::identity(int order) {
    SymMatrix s(order);
    for (int i = 0; i < order; ++i) s.set(i, i, 1.0);
    return s;
}

SymMatrix SymMatrix::outer(const Vec& v) {
    if (v.empty()) throw InvalidInput("SymMatrix::outer: empty vector");
    SymMatrix s(static_cast<int>(v.size()));
    for (int i = 0; i < s.order(); ++i)
        for (int j = i; j < s.order(); ++j) s.set(i, j, v[i] * v[j]);
    return s;
}

Matrix SymMatrix::full() const {
    Matrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

Vec SymMatrix::full_vec() const {
    Vec v(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) v[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
    return v;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::inner(const SymMatrix& other) const {
    if (other.n_ != n_) throw InvalidInput("SymMatrix::inner: order mismatch");
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
        s += (*this)(i, i) * other(i, i);
        for (int j = i + 1; j < n_; ++j) s += 2.0 * (*this)(i, j) * other(i, j);
    }
    return s;
}

double SymMatrix::norm_inf_entry() const {
    double m = 0.0;
    for (double v : u_) m = std::max(m, std::fabs(v));
    return m;
}

SymMatrix SymMatrix::add(const SymMatrix& other) const {
    if (other.n_ != n_) throw InvalidInput("SymMatrix::add: order mismatch");
    SymMatrix r(n_);
    for (std::size_t i = 0; i < u_.size(); ++i) r.u_[i] = u_[i] + other.u_[i];
    return r;
}

SymMatrix SymMatrix::scaled(double alpha) const {
    SymMatrix r(n_);
    for (std::size_t i = 0; i < u_.size(); ++i) r.u_[i] = alpha * u_[i];
    return r;
}

// ---- Jacobi eigensolver -----------------------------------------------------

EigResult sym_eig(const SymMatrix& M, double tol, const Config& cfg) {
    const int n = M.order();
    if (n > 64) throw InvalidInput("sym_eig: order above desk-scale cap of 64");
    Matrix A = M.full();
    Matrix Q = Matrix::identity(n);
    const double scale = 1.0 + M.norm_inf_entry();

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += A(i, j) * A(i, j);
        return std::sqrt(2.0 * s);
    };

    bool converged = (n == 1);
    for (int sweep = 0; sweep < cfg.jacobi_sweep_cap && !converged; ++sweep) {
        double off = off_norm();
        if (off <= tol * scale) {
            converged = true;
            break;
        }
        // rotation threshold: shrink with the remaining off-diagonal mass
        double thresh = (sweep < 3) ? 0.2 * off / (n * n) : 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (std::fabs(apq) <= thresh) continue;
                double app = A(p, p), aqq = A(q, q);
                double diff = aqq - app;
                double t;
                if (std::fabs(apq) < 1e-300 * std::fabs(diff)) {
                    t = apq / diff;
                } else {
                    double theta = diff / (2.0 * apq);
                    t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double tau = s / (1.0 + c);
                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = A(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k != p && k != q) {
                        double akp = A(k, p), akq = A(k, q);
                        A(k, p) = A(p, k) = akp - s * (akq + tau * akp);
                        A(k, q) = A(q, k) = akq + s * (akp - tau * akq);
                    }
                    double qkp = Q(k, p), qkq = Q(k, q);
                    Q(k, p) = qkp - s * (qkq + tau * qkp);
                    Q(k, q) = qkq + s * (qkp - tau * qkq);
                }
            }
        }
        if (off_norm() <= tol * scale) converged = true;
    }
    if (!converged) throw NumericFailure("sym_eig: Jacobi did not converge within sweep cap");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return A(a, a) > A(b, b); });

    EigResult res;
    res.values.resize(n);
    res.Q = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        res.values[j] = A(order[j], order[j]);
        for (int i = 0; i < n; ++i) res.Q(i, j) = Q(i, order[j]);
    }
    return res;
}

// ---- subspace utilities -----------------------------------------------------

Matrix orthonormalize_columns(const Matrix& B, double drop_tol) {
    std::vector<Vec> kept;
    double max_norm = 0.0;
    for (std::size_t j = 0; j < B.cols(); ++j) max_norm = std::max(max_norm, norm2(B.col(j)));
    if (max_norm == 0.0) return Matrix(B.rows(), 0);
    for (std::size_t j = 0; j < B.cols(); ++j) {
        Vec v = B.col(j);
        for (int pass = 0; pass < 2; ++pass)  // re-orthogonalize once
            for (const Vec& u : kept) v = axpy(-dot(u, v), u, v);
        double nv = norm2(v);
        if (nv > drop_tol * max_norm) kept.push_back(scale(1.0 / nv, v));
    }
    Matrix Q(B.rows(), kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j)
        for (std::size_t i = 0; i < B.rows(); ++i) Q(i, j) = kept[j][i];
    return Q;
}

Matrix nullspace(const Matrix& A, double rank_tol) {
    const std::size_t m = A.rows(), n = A.cols();
    if (m == 0) return Matrix::identity(n);
    // Gaussian elimination with partial pivoting to row echelon form.
    Matrix R = A;
    double scale = std::max(1.0, A.norm_inf_entry());
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < m; ++i)
            if (std::fabs(R(i, c)) > std::fabs(R(best, c))) best = i;
        if (std::fabs(R(best, c)) <= rank_tol * scale) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(R(r, j), R(best, j));
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double f = R(i, c) / R(r, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) R(i, j) -= f * R(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        Vec v(n, 0.0);
        v[c] = 1.0;
        for (std::size_t k = 0; k < pivot_col.size(); ++k)
            v[pivot_col[k]] = -R(k, c) / R(k, pivot_col[k]);
        basis.push_back(v);
    }
    Matrix B(n, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) B(i, j) = basis[j][i];
    return orthonormalize_columns(B);
}

Vec lstsq(const Matrix& A, const Vec& b) {
    // normal equations; adequate at desk scale
    const std::size_t n = A.cols();
    Matrix At = A.transpose();
    Matrix G = At.mul(A);
    Vec rhs = At.apply(b);
    // solve G x = rhs by Gaussian elimination with partial pivoting
    Matrix M = G;
    Vec x = rhs;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(M(i, c)) > std::fabs(M(best, c))) best = i;
        if (std::fabs(M(best, c)) < 1e-300) continue;  // singular direction, leave zero
        if (best != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M(c, j), M(best, j));
            std::swap(x[c], x[best]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            double f = M(i, c) / M(c, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) M(i, j) -= f * M(c, j);
            x[i] -= f * x[c];
        }
    }
    Vec sol(n, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        if (std::fabs(M(c, c)) >= 1e-300) sol[c] = x[c] / M(c, c);
    return sol;
}

Vec project_onto_span(const Matrix& Q, const Vec& x) {
    if (Q.cols() == 0) return Vec(x.size(), 0.0);
    return Q.apply(Q.apply_transpose(x));
}

}  // namespace conelift

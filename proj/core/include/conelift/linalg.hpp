#ifndef CONELIFT_LINALG_HPP
#define CONELIFT_LINALG_HPP

#include <cstddef>
#include <vector>

#include "conelift/config.hpp"

namespace conelift {

using Vec = std::vector<double>;

// ---- free vector helpers ----------------------------------------------------

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
Vec axpy(double alpha, const Vec& x, const Vec& y);  // alpha*x + y
Vec scale(double alpha, const Vec& x);
bool all_finite(const Vec& a);
void require_finite(const Vec& a, const char* what);

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    Matrix transpose() const;
    Vec apply(const Vec& x) const;            // A x
    Vec apply_transpose(const Vec& y) const;  // A^T y
    Matrix mul(const Matrix& other) const;
    double norm_inf_entry() const;
    bool finite() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// Symmetric matrix stored as packed upper triangle; symmetric by construction.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int order) : n_(order), u_(packed_size(order), 0.0) {
        if (order < 1) throw InvalidInput("SymMatrix: order must be >= 1");
    }
    /// Validates symmetry of the full matrix to `sym_tol` (absolute, scaled).
    static SymMatrix from_full(const Matrix& full, double sym_tol = 1e-9);
    static SymMatrix identity(int order);
    static SymMatrix outer(const Vec& v);  // v v^T

    int order() const { return n_; }
    double operator()(int i, int j) const { return u_[idx(i, j)]; }
    void set(int i, int j, double v) { u_[idx(i, j)] = v; }
    const std::vector<double>& packed() const { return u_; }

    Matrix full() const;
    Vec full_vec() const;  // row-major full entries, length order^2
    double trace() const;
    /// Trace inner product <A,B> = sum_ij A_ij B_ij.
    double inner(const SymMatrix& other) const;
    double norm_inf_entry() const;
    SymMatrix add(const SymMatrix& other) const;
    SymMatrix scaled(double alpha) const;

    static std::size_t packed_size(int order) {
        return static_cast<std::size_t>(order) * (order + 1) / 2;
    }

private:
    std::size_t idx(int i, int j) const;
    int n_ = 0;
    std::vector<double> u_;
};

/// Result of a symmetric eigendecomposition: M = Q diag(values) Q^T,
/// eigenvalues sorted descending, Q's columns are the matching eigenvectors.
struct EigResult {
    Vec values;
    Matrix Q;
};

/// Cyclic Jacobi with rotation threshold. Orders up to 64; throws
/// NumericFailure if the sweep cap is hit before off-diagonal mass
/// drops below tol * (1 + |M|_inf).
EigResult sym_eig(const SymMatrix& M, double tol = 1e-12,
                  const Config& cfg = default_config());

// ---- subspace utilities -----------------------------------------------------

/// Orthonormalize the columns of B (modified Gram-Schmidt), dropping columns
/// whose residual falls below drop_tol * max column norm. Result has
/// orthonormal columns spanning the same space.
Matrix orthonormalize_columns(const Matrix& B, double drop_tol = 1e-10);

/// Orthonormal basis of the null space of A (possibly 0 columns).
Matrix nullspace(const Matrix& A, double rank_tol = 1e-10);

/// Least squares solution of A x ~= b via normal equations with
/// Gaussian elimination (desk scale only).
Vec lstsq(const Matrix& A, const Vec& b);

/// Projection of x onto the column span of an orthonormal basis Q: Q (Q^T x).
Vec project_onto_span(const Matrix& Q, const Vec& x);

}  // namespace conelift

#endif

#ifndef CONELIFT_POLY_HPP
#define CONELIFT_POLY_HPP

#include <cstdint>
#include <vector>

#include "conelift/config.hpp"
#include "conelift/linalg.hpp"

namespace conelift {

/// Univariate polynomial, coefficients in ascending degree order.
/// Invariant: leading coefficient nonzero unless the zero polynomial
/// (normalize() trims).
class UniPoly {
public:
    UniPoly() : c_{0.0} {}
    explicit UniPoly(Vec coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_ = {0.0};
        require_finite(c_, "UniPoly");
        normalize();
    }
    static UniPoly from_roots(const Vec& roots, double lead = 1.0);
    static UniPoly constant(double v) { return UniPoly(Vec{v}); }

    const Vec& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }
    double lead() const { return c_.back(); }
    double eval(double t) const;
    UniPoly derivative() const;
    UniPoly mul(const UniPoly& other) const;
    UniPoly add(const UniPoly& other) const;
    UniPoly scaled(double alpha) const;
    /// Divide by (t - r); returns quotient, sets remainder = value at r.
    UniPoly deflate(double r, double* remainder = nullptr) const;
    double norm_inf() const { return conelift::norm_inf(c_); }

private:
    void normalize(double drop_tol = 0.0);
    Vec c_;
};

/// Outcome of real root extraction. `roots` is ascending and repeats each
/// root according to its multiplicity. `ok` is false when the residual
/// complex part exceeded the tolerance (reconstruction mismatch).
struct RootResult {
    Vec roots;
    bool ok = true;
    double reconstruction_residual = 0.0;
    std::vector<std::pair<double, int>> clusters;  // (root, multiplicity)
};

/// Real roots of a polynomial that is promised real-rooted up to tol.
/// Sturm-sequence isolation with bisection + multiplicity-robust Newton
/// polishing; multiplicities recovered through the gcd chain and clustering
/// within cfg.cluster_factor * tol. Degree-0 nonzero -> empty list; zero
/// polynomial -> InvalidInput.
RootResult real_roots(const UniPoly& q, double tol = 1e-9,
                      const Config& cfg = default_config());

/// Sparse multivariate polynomial with float coefficients.
class MultiPoly {
public:
    struct Term {
        std::vector<int> exps;
        double coef;
    };

    MultiPoly() = default;
    MultiPoly(int nvars, std::vector<Term> terms);

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    int degree() const;
    bool is_homogeneous() const;
    bool is_zero() const { return terms_.empty(); }
    double eval(const Vec& x) const;
    MultiPoly mul(const MultiPoly& other) const;
    MultiPoly pow(int e) const;
    MultiPoly add(const MultiPoly& other) const;
    MultiPoly scaled(double alpha) const;
    double max_abs_coef() const;
    /// Max relative coefficient difference against `other` (union of supports).
    double coef_distance(const MultiPoly& other) const;

    static MultiPoly monomial(int nvars, const std::vector<int>& exps, double coef);

private:
    void canonicalize();
    int nvars_ = 0;
    std::vector<Term> terms_;
};

/// Coefficients of t -> p(t e - x) recovered by evaluation at Chebyshev
/// nodes scaled to [-|x|-1, |x|+1] followed by Newton interpolation.
/// Requires p homogeneous with p(e) > 0 (hyperbolicity direction).
UniPoly poly_restrict(const MultiPoly& p, const Vec& e, const Vec& x);

}  // namespace conelift

#endif

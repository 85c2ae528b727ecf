#ifndef CONELIFT_HYPERBOLIC_HPP
#define CONELIFT_HYPERBOLIC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "conelift/config.hpp"
#include "conelift/linalg.hpp"
#include "conelift/poly.hpp"

namespace conelift {

/// Hyperbolic eigenvalues of a point: the (sorted ascending) roots of
/// t -> p(te - x); rank counts entries with |lambda| above tolerance.
struct HyperbolicSpectrum {
    Vec eigenvalues;  // length = deg(p), ascending
    int rank = 0;
    bool rank_ambiguous = false;  // some |lambda| fell in the tolerance band
};

struct HyperbolicityCheckResult {
    bool pass = true;
    Vec witness;              // direction where real-rootedness failed
    double worst_residual = 0.0;
    std::uint64_t seed = 0;
};

/// Probabilistic hyperbolicity evidence: draws `samples` random unit
/// directions and requires every restriction to be real-rooted within tol.
/// A pass is evidence, not proof.
HyperbolicityCheckResult hyperbolicity_check(const MultiPoly& p, const Vec& e, int samples,
                                             std::uint64_t seed, double tol,
                                             const Config& cfg = default_config());

/// Roots of p(te - x); throws NumericFailure("hyperbolicity violated at x")
/// when the residual complex part exceeds tol.
HyperbolicSpectrum hyp_eigenvalues(const MultiPoly& p, const Vec& e, const Vec& x,
                                   double tol = 1e-9, const Config& cfg = default_config());

bool hyp_member(const MultiPoly& p, const Vec& e, const Vec& x, double tol,
                const Config& cfg = default_config());
bool hyp_relint(const MultiPoly& p, const Vec& e, const Vec& x, double tol,
                const Config& cfg = default_config());
int hyp_rank(const MultiPoly& p, const Vec& e, const Vec& x, double tol,
             const Config& cfg = default_config());

/// E_1..E_k: E_l is the sum of the l x l principal minors, computed as the
/// elementary symmetric polynomials of the eigenvalues. Order capped at 12.
Vec elementary_minor_sums(const SymMatrix& X, const Config& cfg = default_config());

/// Membership in the derivative relaxation of the PSD cone of order k at
/// level l (0 <= l <= k-1): E_1 >= 0, ..., E_{k-l} >= 0 up to tol.
bool derivative_member(int k, int level, const SymMatrix& X, double tol,
                       const Config& cfg = default_config());

/// Strict version of derivative_member (all kept inequalities positive).
bool derivative_relint(int k, int level, const SymMatrix& X, double tol,
                       const Config& cfg = default_config());

/// Zero-pads Y (order k-l) into the top-left block of an order-k matrix.
SymMatrix derivative_face_embed(int k, int level, const SymMatrix& Y);

/// Factored form p = prod p_i^{m_i} with the shared hyperbolicity direction.
/// Irreducibility of the factors is user-asserted; validation checks the
/// product identity coefficientwise (relative 1e-8) and p_i(e) > 0.
struct FactorData {
    struct Factor {
        MultiPoly p;
        int mult = 1;
    };
    std::vector<Factor> factors;
    Vec e;
};

/// Verifies the FactorData invariants against the expanded product `p`.
/// Throws InvalidInput on failure.
void validate_factor_data(const FactorData& fd, const MultiPoly& p, double rel_tol = 1e-8);

/// Expanded product prod p_i^{m_i}.
MultiPoly factor_product(const FactorData& fd);

/// Determinant of a symmetric k x k matrix as a MultiPoly over the
/// k(k+1)/2 packed upper-triangle variables (row-major: (0,0),(0,1),...,
/// (1,1),...). Supported for k <= 4.
MultiPoly det_poly(int k);

/// Packed upper-triangle coordinates of X matching det_poly's variables.
Vec sym_to_hyp_coords(const SymMatrix& X);
SymMatrix hyp_coords_to_sym(const Vec& coords);

}  // namespace conelift

#endif

#ifndef CONELIFT_LIFTS_HPP
#define CONELIFT_LIFTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conelift/cones.hpp"
#include "conelift/hyperbolic.hpp"
#include "conelift/linalg.hpp"

namespace conelift {

/// A lift description C = pi(K cap L): pi maps the ambient of K to the
/// ambient of C, L is spanned by orthonormal columns, and the optional
/// witness is a point of L cap relint(K) making the lift proper.
struct LiftDesc {
    Matrix pi;  // n x d
    Matrix L;   // d x dim(L), orthonormal columns
    ConeDesc K; // ambient dim d, typically a Product
    std::optional<Vec> witness;
};

/// Validates dimensions, orthonormality of L, and the witness when present.
void validate_lift_desc(const LiftDesc& lift, const Config& cfg = default_config());

/// List of (offset, dim) pairs for the factors of K (a one-element list for
/// non-product cones).
std::vector<std::pair<std::size_t, std::size_t>> factor_spans(const ConeDesc& K);
std::vector<const ConeDesc*> factor_list(const ConeDesc& K);

/// Euclidean projection onto K (closed form per factor: orthant, second
/// order, PSD, products). Throws Unsupported for other families.
Vec project_onto_cone(const ConeDesc& K, const Vec& x, const Config& cfg = default_config());

struct ProperCheckResult {
    enum class Status { VerifiedWitness, FoundWitness, NotFound };
    Status status = Status::NotFound;
    Vec witness;
    /// true when the search was exact (polyhedral-representable factors) and
    /// NotFound therefore certifies L cap relint(K) = empty set; otherwise a
    /// NotFound is inconclusive.
    bool exact_search = false;
};

/// Verifies the supplied witness (throws on a bad one) or searches for one:
/// exact LP search when every factor is an orthant or polyhedral cone,
/// projected-averaging heuristic for PSD / second-order factors.
ProperCheckResult check_proper(const LiftDesc& lift, const Config& cfg = default_config());

struct ProperizeResult {
    LiftDesc lift;
    Matrix embed;                               // new ambient -> old ambient
    std::vector<FaceDesc> faces;                // minimal product face found
    std::vector<long long> face_chain_lengths;  // exact per-factor l(F_i)
    bool degenerate = false;                    // K cap L = {0} as far as we saw
    bool possibly_not_minimal = false;          // heuristic sampling was used
};

/// Restricts the lift to the minimal product face containing K cap L,
/// computed from the minimal face of a sum of samples of K cap L.
ProperizeResult properize(const LiftDesc& lift, const std::vector<Vec>& samples,
                          const Config& cfg = default_config());

struct PrimalSample {
    Vec x;         // point of C
    Vec preimage;  // point of K cap L with pi(preimage) = x
};

struct LiftValidation {
    bool primal_ok = false;       // preimages land in K cap L and project to x
    bool dual_ok = false;         // projected cone points obey the dual samples
    double max_primal_residual = 0.0;
    double worst_dual_value = 0.0;  // most negative <y, pi(z)> observed
    std::vector<std::string> failures;
};

/// Sample-based evidence for C = pi(K cap L); the two containment
/// directions are reported separately.
LiftValidation validate_lift(const LiftDesc& lift, const std::vector<PrimalSample>& primal,
                             const std::vector<Vec>& dual_samples, double tol,
                             const Config& cfg = default_config());

/// Tables of the factorization theorem: b maps primal labels into K, a maps
/// dual labels (subsets or sample ids) into K^*, stored blockwise in the
/// ambient of K.
struct FactorizationData {
    ConeDesc cone;
    std::vector<std::int64_t> primal_labels;
    std::vector<std::vector<std::int64_t>> dual_labels;
    Matrix b;  // |primal| x d
    Matrix a;  // |dual| x d
};

/// Tolerance-checks every b row against K and every a row against K^*
/// (blockwise); throws InvalidInput on violation.
void validate_factorization(const FactorizationData& fd, double tol,
                            const Config& cfg = default_config());

struct FactorizeOutcome {
    FactorizationData data;
    double max_identity_residual = 0.0;
    double max_decomposition_residual = 0.0;
    int max_iterations = 0;
};

/// Constructive factorization of a proper lift: b(x) is the supplied
/// preimage, a(y) is the K^* part of pi^T y in K^* + L-perp, found by
/// Dykstra-corrected alternating projections. The bilinear identity
/// <x,y> = <b(x), a(y)> is enforced on every primal/dual pair to
/// 10 * tol * scale.
FactorizeOutcome factorize(const LiftDesc& lift, const std::vector<PrimalSample>& primal,
                           const std::vector<Vec>& dual_samples, double tol,
                           const Config& cfg = default_config());

/// Decomposition of pi^T y into K^* + L-perp; returns the K^* part.
struct DualDecomposition {
    Vec a;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};
DualDecomposition decompose_dual(const ConeDesc& K, const Matrix& L, const Vec& v,
                                 const Config& cfg = default_config());

// ---- scaled diagonally dominant demo --------------------------------------------

struct SddBlock {
    int i = 0, j = 0;      // 0-based pair, i < j
    double a = 0, b = 0, c = 0;  // [[a, b], [b, c]]
};

struct SddResult {
    bool ok = false;
    std::string reason;
    std::vector<SddBlock> blocks;
};

/// Splits X into 2x2 PSD blocks supported on index pairs: off-diagonals go
/// to their own block, diagonals are allocated proportionally to |X_ij| row
/// weights (uniform fallback for off-diagonal-zero rows). A sufficient
///-condition decomposer, not a complete SDD oracle.
SddResult sdd_decompose(const SymMatrix& X, double tol = 1e-9,
                        const Config& cfg = default_config());

/// Reassembles sum of embedded blocks (for tests).
SymMatrix sdd_reassemble(int k, const std::vector<SddBlock>& blocks);

/// The (S+^2)^m lift of the SDD cone of order k: pi assembles blocks,
/// L is the full space, witness comes from decomposing the identity.
LiftDesc sdd_demo_lift(int k);

/// Preimage of an SDD matrix in the demo lift's ambient coordinates.
Vec sdd_preimage(int k, const std::vector<SddBlock>& blocks);

// ---- hyperbolic factor-product lift ----------------------------------------------

struct FactorLift {
    LiftDesc lift;
    std::vector<long long> factor_chain_bounds;  // deg(p_i) + 1, upper bounds
};

/// The product lift of Lambda_+(p, e) through Lambda_+(p_1, e) x ... with
/// L the diagonal subspace and pi the projection onto the first block.
/// The product identity of fd is verified before construction.
FactorLift factor_lift(const FactorData& fd);

}  // namespace conelift

#endif
